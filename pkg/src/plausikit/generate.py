"""Seeded random model generation under structural constraints, plus random
formula sampling for the property suites.

Plausibility orders come from preference rankings with ties: a ranking over
the states induces a total preorder, and intersecting two rankings gives a
general (possibly partial) preorder.  Both constructions are reflexive and
transitive by construction, so no rejection sampling is needed.  Setting
``uniform`` shares one order across each epistemic class; setting
``locally_connected`` (or ``total_preorders``) uses a single ranking so any
two states are comparable; ``discrete_preorders`` uses the identity order
(and singleton classes when combined with ``locally_connected``).
"""

from __future__ import annotations

import json
import random
import string
from dataclasses import dataclass

from .errors import InputError
from .model import Model, identity_pairs
from .syntax import (And, Announce, Atom, Bot, CondBelief, Formula, Fragment,
                     GtBox, Implies, Know, Not, Or, SafeBelief, Top, Upgrade)

__all__ = [
    "GenSpec", "generate", "rename_states", "random_formula",
    "genspec_to_dict", "genspec_from_dict", "load_genspec",
]


@dataclass(frozen=True)
class GenSpec:
    min_states: int = 1
    max_states: int = 4
    agents: int = 1
    atoms: int = 1
    uniform: bool = False
    locally_connected: bool = False
    total_preorders: bool = False
    discrete_preorders: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.min_states < 1 or self.max_states < self.min_states:
            raise InputError("state count range must satisfy 1 <= min <= max")
        if self.agents < 1 or self.agents > 26:
            raise InputError("agent count must be between 1 and 26")
        if self.atoms < 0 or self.atoms > 26:
            raise InputError("atom count must be between 0 and 26")


_GENSPEC_KEYS = {
    "states", "agents", "atoms", "uniform", "locallyConnected",
    "totalPreorders", "discretePreorders", "seed",
}


def genspec_to_dict(spec: GenSpec) -> dict:
    return {
        "states": [spec.min_states, spec.max_states],
        "agents": spec.agents,
        "atoms": spec.atoms,
        "uniform": spec.uniform,
        "locallyConnected": spec.locally_connected,
        "totalPreorders": spec.total_preorders,
        "discretePreorders": spec.discrete_preorders,
        "seed": spec.seed,
    }


def genspec_from_dict(d: dict) -> GenSpec:
    if not isinstance(d, dict):
        raise InputError("generator spec must be a JSON object")
    extra = set(d) - _GENSPEC_KEYS
    if extra:
        raise InputError(f"generator spec has unknown keys: {sorted(extra)}")
    states = d.get("states", [1, 4])
    if isinstance(states, int):
        lo = hi = states
    elif (isinstance(states, list) and len(states) == 2
          and all(isinstance(x, int) for x in states)):
        lo, hi = states
    else:
        raise InputError("states must be an integer or a [min, max] pair")
    return GenSpec(
        min_states=lo,
        max_states=hi,
        agents=d.get("agents", 1),
        atoms=d.get("atoms", 1),
        uniform=bool(d.get("uniform", False)),
        locally_connected=bool(d.get("locallyConnected", False)),
        total_preorders=bool(d.get("totalPreorders", False)),
        discrete_preorders=bool(d.get("discretePreorders", False)),
        seed=d.get("seed", 0),
    )


def load_genspec(path) -> GenSpec:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise InputError(f"not valid JSON: {e}") from None
    return genspec_from_dict(doc)


def _ranking_preorder(rng: random.Random, states) -> frozenset:
    rank = {s: rng.randrange(len(states)) for s in states}
    return frozenset((x, y) for x in states for y in states if rank[x] <= rank[y])


def _random_preorder(rng: random.Random, states, total: bool) -> frozenset:
    first = _ranking_preorder(rng, states)
    if total or rng.random() < 0.5:
        return first
    return first & _ranking_preorder(rng, states)


def generate(spec: GenSpec) -> Model:
    """Deterministic in the seed: the same spec yields the same model."""
    rng = random.Random(spec.seed)
    n = rng.randint(spec.min_states, spec.max_states)
    states = [f"w{i}" for i in range(n)]
    agents = list(string.ascii_lowercase[:spec.agents])
    atom_names = [string.ascii_lowercase[15 + i % 11] + ("" if i < 11 else str(i // 11))
                  for i in range(spec.atoms)]

    singleton_classes = spec.discrete_preorders and spec.locally_connected
    total = spec.total_preorders or spec.locally_connected

    epist = {}
    classes = {}
    for a in agents:
        if singleton_classes:
            blocks = [[s] for s in states]
        else:
            k = rng.randint(1, n)
            label = {s: rng.randrange(k) for s in states}
            blocks = [[s for s in states if label[s] == b] for b in range(k)]
            blocks = [b for b in blocks if b]
        classes[a] = blocks
        epist[a] = frozenset(
            (x, y) for block in blocks for x in block for y in block)

    plaus = {}
    for a in agents:
        if spec.discrete_preorders:
            order = identity_pairs(states)
            for w in states:
                plaus[(a, w)] = order
        elif spec.uniform:
            for block in classes[a]:
                order = _random_preorder(rng, states, total)
                for w in block:
                    plaus[(a, w)] = order
        else:
            for w in states:
                plaus[(a, w)] = _random_preorder(rng, states, total)

    valuation = {
        p: frozenset(s for s in states if rng.random() < 0.5)
        for p in atom_names
    }
    return Model(states, agents, epist, plaus, valuation)


def rename_states(m: Model, prefix: str = "x") -> Model:
    """Isomorphic copy with every state renamed; useful for building pairs
    of trivially bisimilar models."""
    ren = {s: prefix + s for s in m.states}
    return Model(
        [ren[s] for s in m.states],
        m.agents,
        {a: frozenset((ren[x], ren[y]) for x, y in rel) for a, rel in m.epist.items()},
        {(a, ren[w]): frozenset((ren[x], ren[y]) for x, y in rel)
         for (a, w), rel in m.plaus.items()},
        {p: frozenset(ren[s] for s in xs) for p, xs in m.valuation.items()},
    )


_LEAF_WEIGHT = 0.30


def random_formula(rng: random.Random, atoms, agents, fragment: Fragment,
                   depth: int) -> Formula:
    """Sample a formula of nesting depth at most ``depth`` over the
    signature, deterministic in the RNG state."""
    atoms = sorted(atoms)
    agents = sorted(agents)
    if depth <= 0 or rng.random() < _LEAF_WEIGHT:
        leaves = atoms + ["true", "false"]
        pick = rng.choice(leaves)
        if pick == "true":
            return Top()
        if pick == "false":
            return Bot()
        return Atom(pick)
    kinds = ["not", "and", "or", "implies"]
    for kind in fragment:
        kinds.append(kind)
    kind = rng.choice(kinds)
    sub = lambda: random_formula(rng, atoms, agents, fragment, depth - 1)
    if kind == "not":
        return Not(sub())
    if kind == "and":
        return And(sub(), sub())
    if kind == "or":
        return Or(sub(), sub())
    if kind == "implies":
        return Implies(sub(), sub())
    agent = rng.choice(agents)
    if kind == "K":
        return Know(agent, sub())
    if kind == "Bc":
        return CondBelief(agent, sub(), sub())
    if kind == "Bplus":
        return SafeBelief(agent, sub())
    if kind == "Gt":
        return GtBox(agent, sub())
    if kind == "Ann":
        return Announce(sub(), sub())
    return Upgrade(sub(), sub())
