"""Deciding bisimilarity between finite models.

Three kinds of procedure live here:

* structural checks and greatest-fixpoint computation for the notions whose
  clauses mention only the relations of the two models (knowledge, safe
  belief, strict plausibility);
* the conditional-belief notion, whose clauses quantify over all condition
  formulas of a static sublanguage.  On finite models that quantifier is
  replaced exactly by the family of simultaneously-definable truth-set
  pairs: the least family containing every atom pair and the pair of full
  state sets, closed under componentwise complement, intersection, and the
  fragment's modal truth-set transformers (with conditions drawn from the
  family itself).  Every family member is the truth-set pair of a concrete
  formula, and every formula of the fragment lands in the family, so
  checking the clauses against the family decides the quantified notion
  exactly;
* modal-equivalence and Hennessy-Milner style verification built on that
  family.

State sets are handled as bitmasks internally; the public surface speaks in
frozensets of state names.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, ResourceLimitError
from .model import Model
from .syntax import (Atom, CondBelief, Formula, Fragment, GtBox, Know,
                     Not, And, SafeBelief, Top, format_formula)

__all__ = [
    "Relation", "Violation", "CheckResult", "PairFamily", "HMReport",
    "DEFAULT_FAMILY_CAP", "BC_FRAGMENTS", "check_structural",
    "greatest_structural", "definable_pairs", "check_bc", "modal_equiv",
    "hennessy_milner", "relation_to_dict", "relation_from_dict",
]

DEFAULT_FAMILY_CAP = 4096

_STRUCTURAL_KINDS = ("K", "Bplus", "Gt")

BC_FRAGMENTS = (
    frozenset({"Bc"}),
    frozenset({"K", "Bc"}),
    frozenset({"K", "Bplus", "Bc"}),
)


@dataclass(frozen=True)
class Relation:
    """A set of state pairs between two models; a candidate bisimulation."""

    left: Model
    right: Model
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pairs",
                           frozenset((w, v) for w, v in self.pairs))
        ws = set(self.left.states)
        vs = set(self.right.states)
        for w, v in self.pairs:
            if w not in ws:
                raise InputError(f"relation mentions unknown left state {w!r}")
            if v not in vs:
                raise InputError(f"relation mentions unknown right state {v!r}")

    def __contains__(self, pair):
        return pair in self.pairs

    def sorted_pairs(self):
        return sorted(self.pairs)


@dataclass(frozen=True)
class Violation:
    """Why a relation fails to be a bisimulation: the clause, the pair it
    fails at, and the unmatched ingredients."""

    clause: str
    pair: tuple
    agent: str | None = None
    state: str | None = None
    detail: str = ""

    def __str__(self):
        bits = [f"{self.clause} fails at {self.pair}"]
        if self.agent is not None:
            bits.append(f"agent {self.agent}")
        if self.state is not None:
            bits.append(f"unmatched state {self.state}")
        if self.detail:
            bits.append(self.detail)
        return ", ".join(bits)


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    violation: Violation | None = None

    def __bool__(self):
        return self.ok


def _require_same_agents(left: Model, right: Model) -> None:
    if left.agents != right.agents:
        raise InputError(
            f"models have different agent sets: {list(left.agents)} vs {list(right.agents)}")


def _atoms_of(left: Model, right: Model):
    return sorted(set(left.valuation) | set(right.valuation))


def relation_to_dict(rel: Relation, left_ref: str = "", right_ref: str = "") -> dict:
    return {
        "left": left_ref,
        "right": right_ref,
        "pairs": [list(p) for p in rel.sorted_pairs()],
    }


def relation_from_dict(doc: dict, left: Model, right: Model) -> Relation:
    if not isinstance(doc, dict) or "pairs" not in doc:
        raise InputError("relation document must be an object with a 'pairs' key")
    pairs = []
    for item in doc["pairs"]:
        if (not isinstance(item, list) or len(item) != 2
                or not all(isinstance(s, str) for s in item)):
            raise InputError(f"malformed relation pair {item!r}")
        pairs.append((item[0], item[1]))
    return Relation(left, right, frozenset(pairs))


# ---------------------------------------------------------------------------
# Structural notions

def _zig_data(m: Model, agent: str, w: str):
    """Candidate partners for each structural clause at (agent, w):
    whole class, the at-least-as-plausible part, the strictly-more-plausible
    part."""
    cls = frozenset(v for x, v in m.epist[agent] if x == w)
    rel = m.plaus[(agent, w)]
    below = frozenset(v for v in cls if (v, w) in rel)
    strictly = frozenset(v for v in below if (w, v) not in rel)
    return cls, below, strictly


def check_structural(rel: Relation, fragment: Fragment) -> CheckResult:
    """Check the atoms clause plus the zig and zag clauses of every requested
    structural notion.  The first violation (pairs, agents, states and
    notions scanned in sorted order) is reported."""
    _require_same_agents(rel.left, rel.right)
    bad = fragment.operators - frozenset(_STRUCTURAL_KINDS)
    if bad:
        raise InputError(f"not structural notions: {sorted(bad)}")
    left, right = rel.left, rel.right
    atoms = _atoms_of(left, right)
    l_image: dict = {}
    r_image: dict = {}
    for w, v in rel.pairs:
        l_image.setdefault(w, set()).add(v)
        r_image.setdefault(v, set()).add(w)

    for w, v in rel.sorted_pairs():
        for p in atoms:
            if (w in left.atom_extension(p)) != (v in right.atom_extension(p)):
                return CheckResult(False, Violation(
                    "atoms", (w, v), detail=f"atom {p}"))

    sel = {"K": 0, "Bplus": 1, "Gt": 2}
    for kind in _STRUCTURAL_KINDS:
        if kind not in fragment:
            continue
        idx = sel[kind]
        for w, v in rel.sorted_pairs():
            for agent in left.agents:
                l_targets = _zig_data(left, agent, w)[idx]
                r_targets = _zig_data(right, agent, v)[idx]
                for x in sorted(l_targets):
                    if not (l_image.get(x, frozenset()) & r_targets):
                        return CheckResult(False, Violation(
                            f"{kind}-zig", (w, v), agent=agent, state=x))
                for y in sorted(r_targets):
                    if not (r_image.get(y, frozenset()) & l_targets):
                        return CheckResult(False, Violation(
                            f"{kind}-zag", (w, v), agent=agent, state=y))
    return CheckResult(True)


def greatest_structural(left: Model, right: Model, fragment: Fragment) -> Relation:
    """Largest relation satisfying the structural clauses: start from every
    atom-respecting pair and delete pairs with an unmatched clause until
    nothing changes.  The result is the union of all such bisimulations."""
    _require_same_agents(left, right)
    bad = fragment.operators - frozenset(_STRUCTURAL_KINDS)
    if bad:
        raise InputError(f"not structural notions: {sorted(bad)}")
    atoms = _atoms_of(left, right)
    pairs = {
        (w, v)
        for w in left.states
        for v in right.states
        if all((w in left.atom_extension(p)) == (v in right.atom_extension(p))
               for p in atoms)
    }
    kinds = [k for k in _STRUCTURAL_KINDS if k in fragment]
    sel = {"K": 0, "Bplus": 1, "Gt": 2}
    zig_l = {
        (a, w): _zig_data(left, a, w) for a in left.agents for w in left.states}
    zig_r = {
        (a, v): _zig_data(right, a, v) for a in right.agents for v in right.states}

    changed = True
    while changed:
        changed = False
        l_image: dict = {}
        r_image: dict = {}
        for w, v in pairs:
            l_image.setdefault(w, set()).add(v)
            r_image.setdefault(v, set()).add(w)
        doomed = set()
        for w, v in pairs:
            ok = True
            for kind in kinds:
                idx = sel[kind]
                for agent in left.agents:
                    l_targets = zig_l[(agent, w)][idx]
                    r_targets = zig_r[(agent, v)][idx]
                    if any(not (l_image.get(x, frozenset()) & r_targets)
                           for x in l_targets):
                        ok = False
                        break
                    if any(not (r_image.get(y, frozenset()) & l_targets)
                           for y in r_targets):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                doomed.add((w, v))
        if doomed:
            pairs -= doomed
            changed = True
    return Relation(left, right, frozenset(pairs))


# ---------------------------------------------------------------------------
# Definable-pair closure

class _Side:
    """Bitmask view of one model with cached truth-set transformers."""

    def __init__(self, m: Model):
        self.m = m
        self.states = m.states
        self.index = {s: k for k, s in enumerate(m.states)}
        self.n = len(m.states)
        self.full = (1 << self.n) - 1
        self.cls = {}
        self.below = {}
        self.above = {}
        for a in m.agents:
            for w in m.states:
                wi = self.index[w]
                cls_mask = 0
                for x, v in m.epist[a]:
                    if x == w:
                        cls_mask |= 1 << self.index[v]
                self.cls[(a, wi)] = cls_mask
                below = [0] * self.n
                above = [0] * self.n
                for x, y in m.plaus[(a, w)]:
                    below[self.index[y]] |= 1 << self.index[x]
                    above[self.index[x]] |= 1 << self.index[y]
                self.below[(a, wi)] = below
                self.above[(a, wi)] = above
        self._min_cache: dict = {}
        self._box_cache: dict = {}

    def mask(self, xs) -> int:
        out = 0
        for s in xs:
            out |= 1 << self.index[s]
        return out

    def unmask(self, mask: int) -> frozenset:
        return frozenset(s for s, k in self.index.items() if mask >> k & 1)

    def min_mask(self, agent: str, wi: int, xmask: int) -> int:
        key = (agent, wi, xmask)
        got = self._min_cache.get(key)
        if got is not None:
            return got
        below = self.below[(agent, wi)]
        above = self.above[(agent, wi)]
        out = 0
        rest = xmask
        while rest:
            low = rest & -rest
            xi = low.bit_length() - 1
            rest ^= low
            if not (xmask & below[xi] & ~above[xi]):
                out |= low
        self._min_cache[key] = out
        return out

    def box(self, kind: str, agent: str, mask: int, cond: int = 0) -> int:
        key = (kind, agent, mask, cond)
        got = self._box_cache.get(key)
        if got is not None:
            return got
        out = 0
        for wi in range(self.n):
            cls = self.cls[(agent, wi)]
            if kind == "K":
                targets = cls
            elif kind == "Bplus":
                targets = self.below[(agent, wi)][wi] & cls
            elif kind == "Gt":
                targets = (self.below[(agent, wi)][wi]
                           & ~self.above[(agent, wi)][wi] & cls)
            else:  # Bc
                targets = self.min_mask(agent, wi, cond & cls)
            if not (targets & ~mask):
                out |= 1 << wi
        self._box_cache[key] = out
        return out


@dataclass
class PairFamily:
    """Family of simultaneously-definable truth-set pairs across two models.

    ``pairs[k]`` is the truth-set pair produced by ``recipes[k]``; a recipe
    records the generating atom or operation so each member can be replayed
    into a concrete formula whose truth sets realize the pair.
    """

    left: Model
    right: Model
    fragment: Fragment
    pairs: tuple
    recipes: tuple
    _formulas: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.pairs)

    def index(self) -> dict:
        return {pair: k for k, pair in enumerate(self.pairs)}

    def formula(self, k: int) -> Formula:
        """Replay recipe k into a formula realizing pairs[k]."""
        got = self._formulas.get(k)
        if got is not None:
            return got
        recipe = self.recipes[k]
        op = recipe[0]
        if op == "atom":
            out: Formula = Atom(recipe[1])
        elif op == "top":
            out = Top()
        elif op == "not":
            out = Not(self.formula(recipe[1]))
        elif op == "and":
            out = And(self.formula(recipe[1]), self.formula(recipe[2]))
        elif op == "K":
            out = Know(recipe[1], self.formula(recipe[2]))
        elif op == "Bplus":
            out = SafeBelief(recipe[1], self.formula(recipe[2]))
        elif op == "Gt":
            out = GtBox(recipe[1], self.formula(recipe[2]))
        elif op == "Bc":
            out = CondBelief(recipe[1], self.formula(recipe[2]), self.formula(recipe[3]))
        else:
            raise AssertionError(f"unknown recipe {recipe!r}")
        self._formulas[k] = out
        return out

    def agree(self, w: str, v: str) -> bool:
        """Do w (left) and v (right) fall on the same side of every pair?"""
        return all((w in ls) == (v in rs) for ls, rs in self.pairs)


def definable_pairs(left: Model, right: Model, fragment: Fragment,
                    cap: int = DEFAULT_FAMILY_CAP) -> PairFamily:
    """Close the atom pairs and the pair of full state sets under the
    fragment's operations, simultaneously in both models.

    The family lives inside the finite lattice of subset pairs, so the
    closure terminates; ``cap`` bounds its size and a crossing raises
    :class:`ResourceLimitError`.
    """
    _require_same_agents(left, right)
    if not fragment.is_static:
        raise InputError("definable pairs are only computed for static fragments")
    bad = fragment.operators - frozenset({"K", "Bc", "Bplus", "Gt"})
    if bad:
        raise InputError(f"unknown static operators: {sorted(bad)}")
    sl = _Side(left)
    sr = _Side(right)
    agents = left.agents
    entries: list[tuple[int, int]] = []
    recipes: list[tuple] = []
    seen: dict = {}

    def add(pair, recipe) -> None:
        if pair in seen:
            return
        if len(entries) >= cap:
            raise ResourceLimitError(
                f"definable pair family exceeded cap of {cap} pairs", cap=cap)
        seen[pair] = len(entries)
        entries.append(pair)
        recipes.append(recipe)

    for p in _atoms_of(left, right):
        add((sl.mask(left.atom_extension(p)), sr.mask(right.atom_extension(p))),
            ("atom", p))
    add((sl.full, sr.full), ("top",))

    unary = [k for k in ("K", "Bplus", "Gt") if k in fragment]
    use_bc = "Bc" in fragment
    i = 0
    while i < len(entries):
        ml, mr = entries[i]
        add((sl.full & ~ml, sr.full & ~mr), ("not", i))
        for j in range(i + 1):
            nl, nr = entries[j]
            add((ml & nl, mr & nr), ("and", i, j))
        for kind in unary:
            for a in agents:
                add((sl.box(kind, a, ml), sr.box(kind, a, mr)), (kind, a, i))
        if use_bc:
            for a in agents:
                for j in range(i + 1):
                    nl, nr = entries[j]
                    add((sl.box("Bc", a, nl, cond=ml), sr.box("Bc", a, nr, cond=mr)),
                        ("Bc", a, i, j))
                    if j != i:
                        add((sl.box("Bc", a, ml, cond=nl), sr.box("Bc", a, mr, cond=nr)),
                            ("Bc", a, j, i))
        i += 1

    pairs = tuple((sl.unmask(ml), sr.unmask(mr)) for ml, mr in entries)
    return PairFamily(left, right, fragment, pairs, tuple(recipes))


# ---------------------------------------------------------------------------
# Conditional-belief notion, equivalence, Hennessy-Milner

def _bc_fragment(fragment: Fragment) -> frozenset:
    if fragment.operators not in BC_FRAGMENTS:
        raise InputError(
            "conditional-belief bisimulation is defined for the fragments "
            "Bc, K+Bc and K+Bplus+Bc; got " + str(fragment))
    return fragment.operators


def check_bc(rel: Relation, fragment: Fragment,
             cap: int = DEFAULT_FAMILY_CAP,
             family: PairFamily | None = None) -> CheckResult:
    """Check the conditional-belief zig and zag clauses with the condition
    quantifier ranging over the definable-pair family of the fragment, plus
    the structural clauses of any other operators in the fragment."""
    ops = _bc_fragment(fragment)
    structural = Fragment(ops - {"Bc"})
    base = check_structural(rel, structural)
    if not base.ok:
        return base
    left, right = rel.left, rel.right
    if family is None:
        family = definable_pairs(left, right, fragment, cap=cap)
    l_image: dict = {}
    r_image: dict = {}
    for w, v in rel.pairs:
        l_image.setdefault(w, set()).add(v)
        r_image.setdefault(v, set()).add(w)
    sl = _Side(left)
    sr = _Side(right)

    for w, v in rel.sorted_pairs():
        wi = sl.index[w]
        vi = sr.index[v]
        for agent in left.agents:
            for k, (ls, rs) in enumerate(family.pairs):
                lmin = sl.unmask(sl.min_mask(agent, wi, sl.mask(ls) & sl.cls[(agent, wi)]))
                rmin = sr.unmask(sr.min_mask(agent, vi, sr.mask(rs) & sr.cls[(agent, vi)]))
                for x in sorted(lmin):
                    if not (l_image.get(x, frozenset()) & rmin):
                        return CheckResult(False, Violation(
                            "Bc-zig", (w, v), agent=agent, state=x,
                            detail=f"condition {format_formula(family.formula(k))}"))
                for y in sorted(rmin):
                    if not (r_image.get(y, frozenset()) & lmin):
                        return CheckResult(False, Violation(
                            "Bc-zag", (w, v), agent=agent, state=y,
                            detail=f"condition {format_formula(family.formula(k))}"))
    return CheckResult(True)


def modal_equiv(left: Model, w: str, right: Model, v: str,
                fragment: Fragment, cap: int = DEFAULT_FAMILY_CAP,
                family: PairFamily | None = None) -> bool:
    """Do w and v satisfy exactly the same formulas of the fragment?

    Decided exactly on finite models: the two states agree on every formula
    of the static fragment iff they agree on every definable truth-set pair.
    """
    if w not in left.states:
        raise InputError(f"unknown state {w!r}")
    if v not in right.states:
        raise InputError(f"unknown state {v!r}")
    if family is None:
        family = definable_pairs(left, right, fragment, cap=cap)
    return all((w in ls) == (v in rs) for ls, rs in family.pairs)


@dataclass(frozen=True)
class HMReport:
    ok: bool
    relation: Relation
    violation: Violation | None = None


def hennessy_milner(left: Model, right: Model,
                    cap: int = DEFAULT_FAMILY_CAP) -> HMReport:
    """Compute the K+Bc modal-equivalence relation between two models and
    verify it is itself a K+Bc bisimulation.  On finite models this must
    succeed; a failure report means the toolkit itself is broken."""
    fragment = Fragment.of("K", "Bc")
    family = definable_pairs(left, right, fragment, cap=cap)
    pairs = frozenset(
        (w, v)
        for w in left.states
        for v in right.states
        if all((w in ls) == (v in rs) for ls, rs in family.pairs)
    )
    rel = Relation(left, right, pairs)
    res = check_bc(rel, fragment, cap=cap, family=family)
    return HMReport(res.ok, rel, res.violation)
