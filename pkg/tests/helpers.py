"""Shared test support: an independent reference evaluator, model builders,
and hypothesis strategies.

The reference evaluator is deliberately naive: straight per-state recursion,
no memoization, no truth-set computation, with its own copies of the model
transformations written as comprehensions.  It exists to disagree with the
production evaluator if either is wrong.
"""

from __future__ import annotations

from hypothesis import strategies as st

from plausikit import (And, Announce, Atom, Bot, CondBelief, Fragment, GtBox,
                       Implies, Know, Model, Not, Or, SafeBelief, Top,
                       Upgrade)


def ref_holds(m: Model, w: str, f) -> bool:
    if isinstance(f, Atom):
        return w in m.valuation.get(f.name, frozenset())
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Not):
        return not ref_holds(m, w, f.sub)
    if isinstance(f, And):
        return ref_holds(m, w, f.left) and ref_holds(m, w, f.right)
    if isinstance(f, Or):
        return ref_holds(m, w, f.left) or ref_holds(m, w, f.right)
    if isinstance(f, Implies):
        return (not ref_holds(m, w, f.left)) or ref_holds(m, w, f.right)
    if isinstance(f, Know):
        return all(ref_holds(m, v, f.sub)
                   for v in m.states if (w, v) in m.epist[f.agent])
    if isinstance(f, SafeBelief):
        rel = m.plaus[(f.agent, w)]
        return all(ref_holds(m, v, f.sub)
                   for v in m.states
                   if (w, v) in m.epist[f.agent] and (v, w) in rel)
    if isinstance(f, GtBox):
        rel = m.plaus[(f.agent, w)]
        return all(ref_holds(m, v, f.sub)
                   for v in m.states
                   if (w, v) in m.epist[f.agent]
                   and (v, w) in rel and (w, v) not in rel)
    if isinstance(f, CondBelief):
        rel = m.plaus[(f.agent, w)]
        xs = [v for v in m.states
              if (w, v) in m.epist[f.agent] and ref_holds(m, v, f.cond)]
        # Minimality via the strict order: nothing in xs strictly better.
        mins = [x for x in xs
                if not any((y, x) in rel and (x, y) not in rel for y in xs)]
        return all(ref_holds(m, v, f.sub) for v in mins)
    if isinstance(f, Announce):
        if not ref_holds(m, w, f.ann):
            return True
        return ref_holds(ref_announce(m, f.ann), w, f.sub)
    if isinstance(f, Upgrade):
        return ref_holds(ref_upgrade(m, f.up), w, f.sub)
    raise TypeError(f"not a formula: {f!r}")


def ref_announce(m: Model, ann) -> Model:
    keep = {v for v in m.states if ref_holds(m, v, ann)}
    return Model(
        [s for s in m.states if s in keep],
        m.agents,
        {a: {(x, y) for x, y in rel if x in keep and y in keep}
         for a, rel in m.epist.items()},
        {(a, w): {(x, y) for x, y in rel if x in keep and y in keep}
         for (a, w), rel in m.plaus.items() if w in keep},
        {p: xs & keep for p, xs in m.valuation.items()},
    )


def ref_upgrade(m: Model, up) -> Model:
    good = {v for v in m.states if ref_holds(m, v, up)}
    bad = set(m.states) - good
    return Model(
        m.states, m.agents, m.epist,
        {key: {(x, y) for x, y in rel
               if (x in good and y in good) or (x in bad and y in bad)}
              | {(x, y) for x in good for y in bad}
         for key, rel in m.plaus.items()},
        m.valuation,
    )


# ---------------------------------------------------------------------------
# Builders

def two_state(plaus_w, plaus_v, atoms=None):
    """Single-agent model on {v, w} with one epistemic class."""
    states = ["v", "w"]
    every = {(x, y) for x in states for y in states}
    return Model(
        states, ["a"], {"a": every},
        {("a", "w"): plaus_w, ("a", "v"): plaus_v},
        atoms or {},
    )


DISCRETE2 = {("v", "v"), ("w", "w")}
TOTAL2 = {("v", "v"), ("w", "w"), ("v", "w"), ("w", "v")}


# ---------------------------------------------------------------------------
# Hypothesis strategies

@st.composite
def models(draw, max_states=4, max_agents=2, max_atoms=2):
    n = draw(st.integers(1, max_states))
    states = [f"w{i}" for i in range(n)]
    agents = ["a", "b"][: draw(st.integers(1, max_agents))]
    ranks = st.lists(st.integers(0, n - 1), min_size=n, max_size=n)
    epist = {}
    plaus = {}
    for a in agents:
        labels = draw(ranks)
        epist[a] = {(x, y) for i, x in enumerate(states)
                    for j, y in enumerate(states) if labels[i] == labels[j]}
        for w in states:
            r1 = draw(ranks)
            r2 = draw(ranks) if draw(st.booleans()) else r1
            plaus[(a, w)] = {
                (x, y) for i, x in enumerate(states) for j, y in enumerate(states)
                if r1[i] <= r1[j] and r2[i] <= r2[j]}
    n_atoms = draw(st.integers(0, max_atoms))
    valuation = {}
    for k in range(n_atoms):
        valuation["pq"[k] if k < 2 else f"p{k}"] = draw(
            st.sets(st.sampled_from(states)))
    return Model(states, agents, epist, plaus, valuation)


@st.composite
def model_with_formula(draw, fragment=Fragment.of("K", "Bc", "Bplus", "Gt",
                                                  "Ann", "Up"),
                       max_states=4, max_depth=3):
    """A model together with a formula over its own agents and atoms."""
    m = draw(models(max_states=max_states))
    atoms = sorted(m.valuation) or ["p"]
    f = draw(formulas(atoms=atoms, agents=m.agents, fragment=fragment,
                      max_depth=max_depth))
    return m, f


def formulas(atoms=("p", "q"), agents=("a", "b"),
             fragment=Fragment.of("K", "Bc", "Bplus", "Gt", "Ann", "Up"),
             max_depth=3):
    leaves = st.sampled_from(
        [Atom(p) for p in atoms] + [Top(), Bot()])

    def extend(kids):
        options = [
            st.builds(Not, kids),
            st.builds(And, kids, kids),
            st.builds(Or, kids, kids),
            st.builds(Implies, kids, kids),
        ]
        agent = st.sampled_from(list(agents))
        if "K" in fragment:
            options.append(st.builds(Know, agent, kids))
        if "Bc" in fragment:
            options.append(st.builds(CondBelief, agent, kids, kids))
        if "Bplus" in fragment:
            options.append(st.builds(SafeBelief, agent, kids))
        if "Gt" in fragment:
            options.append(st.builds(GtBox, agent, kids))
        if "Ann" in fragment:
            options.append(st.builds(Announce, kids, kids))
        if "Up" in fragment:
            options.append(st.builds(Upgrade, kids, kids))
        return st.one_of(options)

    return st.recursive(leaves, extend, max_leaves=max_depth * 3)
