"""Finite multi-agent epistemic plausibility models and their structural checks.

A model consists of a finite state set, a finite agent set, one epistemic
indistinguishability relation per agent (an equivalence relation on the
states), one plausibility preorder per agent and state, and a valuation.
A plausibility pair ``(x, y)`` reads "x is at least as plausible as y";
minimal elements are the most plausible ones.  Valuations are partial over
atoms: an atom without an entry is false everywhere.

Models are immutable after construction and safe to share; every operation
here is a pure function of its inputs.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable

from .errors import InputError

__all__ = [
    "Model", "StrictOrders", "identity_pairs", "total_pairs", "validate",
    "eq_class", "min_set", "strict", "is_uniform", "uniformity_counterexample",
    "is_locally_connected", "connectedness_counterexample", "is_image_finite",
    "model_to_dict", "model_from_dict", "model_to_json", "model_from_json",
    "load_model", "save_model",
]

_IDENT = re.compile(r"[A-Za-z0-9_]+\Z")

Pair = tuple[str, str]


def identity_pairs(xs: Iterable[str]) -> frozenset:
    return frozenset((x, x) for x in xs)


def total_pairs(xs: Iterable[str]) -> frozenset:
    xs = list(xs)
    return frozenset((x, y) for x in xs for y in xs)


class Model:
    """Immutable epistemic plausibility model.

    ``epist[i]`` is agent i's indistinguishability relation as a set of state
    pairs.  ``plaus[(i, w)]`` is the plausibility preorder agent i uses at
    state w.  ``valuation[p]`` is the extension of atom p.  Construction
    normalizes everything into sorted tuples and frozensets; it does not
    check the model axioms, which is the job of :func:`validate`.
    """

    __slots__ = ("states", "agents", "epist", "plaus", "valuation", "_hash")

    def __init__(self, states, agents, epist, plaus, valuation):
        self.states: tuple[str, ...] = tuple(sorted(set(states)))
        self.agents: tuple[str, ...] = tuple(sorted(set(agents)))
        self.epist: dict[str, frozenset] = {
            a: frozenset((x, y) for x, y in pairs)
            for a, pairs in sorted(dict(epist).items())
        }
        self.plaus: dict[tuple[str, str], frozenset] = {
            (a, w): frozenset((x, y) for x, y in pairs)
            for (a, w), pairs in sorted(dict(plaus).items())
        }
        self.valuation: dict[str, frozenset] = {
            p: frozenset(xs) for p, xs in sorted(dict(valuation).items())
        }
        self._hash: int | None = None

    def _key(self):
        return (
            self.states,
            self.agents,
            tuple(sorted((a, tuple(sorted(r))) for a, r in self.epist.items())),
            tuple(sorted((k, tuple(sorted(r))) for k, r in self.plaus.items())),
            tuple(sorted((p, tuple(sorted(xs))) for p, xs in self.valuation.items())),
        )

    def __eq__(self, other):
        if not isinstance(other, Model):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._key()))
        return self._hash

    def __repr__(self):
        return (f"Model(states={list(self.states)}, agents={list(self.agents)}, "
                f"atoms={sorted(self.valuation)})")

    def atom_extension(self, atom: str) -> frozenset:
        """Extension of an atom; absent atoms are false everywhere."""
        return self.valuation.get(atom, frozenset())


@dataclass(frozen=True)
class StrictOrders:
    """Strict part and indifference part of every plausibility preorder.

    ``lt[(i, w)]`` holds (x, y) when x is strictly more plausible than y at
    (i, w); ``eqv[(i, w)]`` holds the mutually comparable pairs.
    """

    lt: dict
    eqv: dict


def _require_agent(m: Model, agent: str) -> None:
    if agent not in m.epist or agent not in m.agents:
        raise InputError(f"unknown agent {agent!r}")


def _require_state(m: Model, state: str) -> None:
    if state not in m.states:
        raise InputError(f"unknown state {state!r}")


def _plaus_at(m: Model, agent: str, state: str) -> frozenset:
    _require_agent(m, agent)
    _require_state(m, state)
    try:
        return m.plaus[(agent, state)]
    except KeyError:
        raise InputError(f"no plausibility order for ({agent!r}, {state!r})") from None


def validate(m: Model) -> list[str]:
    """Return every violated model invariant, with witnesses; [] means valid.

    Violations are data, not failures: an ill-formed model is describable,
    it just must not be fed to the semantic operations.
    """
    problems: list[str] = []
    states = set(m.states)

    if not m.states:
        problems.append("model has no states")
    if not m.agents:
        problems.append("model has no agents")
    for s in m.states:
        if not _IDENT.match(s):
            problems.append(f"bad state identifier {s!r}")
    for a in m.agents:
        if not _IDENT.match(a):
            problems.append(f"bad agent identifier {a!r}")
    for p in m.valuation:
        if not _IDENT.match(p):
            problems.append(f"bad atom identifier {p!r}")

    for a in sorted(m.epist):
        if a not in m.agents:
            problems.append(f"epist mentions undeclared agent {a!r}")
    for a in m.agents:
        if a not in m.epist:
            problems.append(f"no epistemic relation for agent {a!r}")
            continue
        rel = m.epist[a]
        for x, y in sorted(rel):
            for s in (x, y):
                if s not in states:
                    problems.append(f"epist[{a}] mentions unknown state {s!r}")
        pairs = {p for p in rel if p[0] in states and p[1] in states}
        for w in m.states:
            if (w, w) not in pairs:
                problems.append(f"epist[{a}] not reflexive at {w!r}")
        for x, y in sorted(pairs):
            if (y, x) not in pairs:
                problems.append(f"epist[{a}] not symmetric: ({x!r}, {y!r})")
        for x, y in sorted(pairs):
            for y2, z in sorted(pairs):
                if y == y2 and (x, z) not in pairs:
                    problems.append(
                        f"epist[{a}] not transitive: ({x!r}, {y!r}) and ({y!r}, {z!r})")

    for a, w in sorted(m.plaus):
        if a not in m.agents or w not in states:
            problems.append(f"plaus key ({a!r}, {w!r}) uses unknown agent or state")
    for a in m.agents:
        for w in m.states:
            if (a, w) not in m.plaus:
                problems.append(f"no plausibility order for ({a!r}, {w!r})")
                continue
            rel = m.plaus[(a, w)]
            for x, y in sorted(rel):
                for s in (x, y):
                    if s not in states:
                        problems.append(f"plaus[{a},{w}] mentions unknown state {s!r}")
            pairs = {p for p in rel if p[0] in states and p[1] in states}
            for x in m.states:
                if (x, x) not in pairs:
                    problems.append(f"plaus[{a},{w}] not reflexive at {x!r}")
            for x, y in sorted(pairs):
                for y2, z in sorted(pairs):
                    if y == y2 and (x, z) not in pairs:
                        problems.append(
                            f"plaus[{a},{w}] not transitive: ({x!r}, {y!r}) and ({y!r}, {z!r})")

    for p in sorted(m.valuation):
        for s in sorted(m.valuation[p]):
            if s not in states:
                problems.append(f"valuation[{p}] mentions unknown state {s!r}")

    return problems


def eq_class(m: Model, agent: str, state: str) -> frozenset:
    """The epistemic equivalence class of ``state`` under agent ``agent``."""
    _require_agent(m, agent)
    _require_state(m, state)
    return frozenset(v for w, v in m.epist[agent] if w == state)


def min_set(m: Model, agent: str, state: str, xs: Iterable[str]) -> frozenset:
    """Most-plausible elements of ``xs`` under the order held at ``state``.

    An element x of xs is minimal when every y in xs that is at least as
    plausible as x is matched back (x is at least as plausible as y).  On a
    finite model this is nonempty whenever xs is.
    """
    rel = _plaus_at(m, agent, state)
    xs = frozenset(xs)
    for s in xs:
        if s not in m.states:
            raise InputError(f"unknown state {s!r}")
    return frozenset(
        x for x in xs
        if all((x, y) in rel for y in xs if (y, x) in rel)
    )


def strict(m: Model) -> StrictOrders:
    """Split every plausibility preorder into strict and indifference parts."""
    lt = {}
    eqv = {}
    for key, rel in m.plaus.items():
        lt[key] = frozenset((x, y) for x, y in rel if (y, x) not in rel)
        eqv[key] = frozenset((x, y) for x, y in rel if (y, x) in rel)
    return StrictOrders(lt=lt, eqv=eqv)


def uniformity_counterexample(m: Model):
    """First (agent, w, v, pair) where indistinguishable states hold
    different plausibility orders; None when the model is uniform."""
    for a in m.agents:
        for w in m.states:
            for v in m.states:
                if w >= v or (w, v) not in m.epist.get(a, frozenset()):
                    continue
                rw = m.plaus.get((a, w), frozenset())
                rv = m.plaus.get((a, v), frozenset())
                if rw != rv:
                    diff = min(rw.symmetric_difference(rv))
                    return (a, w, v, diff)
    return None


def is_uniform(m: Model) -> bool:
    return uniformity_counterexample(m) is None


def connectedness_counterexample(m: Model):
    """First (agent, w, v) with w and v indistinguishable but incomparable
    under the order held at w; None when the model is locally connected."""
    for a in m.agents:
        for w in m.states:
            rel = m.plaus.get((a, w), frozenset())
            for v in m.states:
                if v == w or (w, v) not in m.epist.get(a, frozenset()):
                    continue
                if (w, v) not in rel and (v, w) not in rel:
                    return (a, w, v)
    return None


def is_locally_connected(m: Model) -> bool:
    return connectedness_counterexample(m) is None


def is_image_finite(m: Model) -> bool:
    """Every epistemic class is finite.  Vacuously true here: this toolkit
    only represents finite models.  Kept so harness assertions can state the
    hypothesis explicitly."""
    return True


# ---------------------------------------------------------------------------
# File format (JSON)

_TOP_KEYS = {"states", "agents", "epist", "plaus", "valuation"}


def model_to_dict(m: Model) -> dict:
    return {
        "states": list(m.states),
        "agents": list(m.agents),
        "epist": {
            a: [list(p) for p in sorted(m.epist.get(a, frozenset()))]
            for a in m.agents
        },
        "plaus": {
            a: {
                w: [list(p) for p in sorted(m.plaus.get((a, w), frozenset()))]
                for w in m.states
            }
            for a in m.agents
        },
        "valuation": {p: sorted(xs) for p, xs in m.valuation.items()},
    }


def _check_pairs(raw, where: str) -> list[tuple[str, str]]:
    if not isinstance(raw, list):
        raise InputError(f"{where}: expected a list of pairs")
    out = []
    for item in raw:
        if (not isinstance(item, list) or len(item) != 2
                or not all(isinstance(s, str) for s in item)):
            raise InputError(f"{where}: malformed pair {item!r}")
        out.append((item[0], item[1]))
    return out


def model_from_dict(d: dict) -> Model:
    if not isinstance(d, dict):
        raise InputError("model document must be a JSON object")
    missing = _TOP_KEYS - set(d)
    if missing:
        raise InputError(f"model document missing keys: {sorted(missing)}")
    extra = set(d) - _TOP_KEYS
    if extra:
        raise InputError(f"model document has unknown keys: {sorted(extra)}")
    if not isinstance(d["states"], list) or not all(isinstance(s, str) for s in d["states"]):
        raise InputError("states: expected a list of strings")
    if not isinstance(d["agents"], list) or not all(isinstance(a, str) for a in d["agents"]):
        raise InputError("agents: expected a list of strings")
    if not isinstance(d["epist"], dict):
        raise InputError("epist: expected an object")
    if not isinstance(d["plaus"], dict):
        raise InputError("plaus: expected an object")
    if not isinstance(d["valuation"], dict):
        raise InputError("valuation: expected an object")
    epist = {a: _check_pairs(pairs, f"epist[{a}]") for a, pairs in d["epist"].items()}
    plaus = {}
    for a, per_state in d["plaus"].items():
        if not isinstance(per_state, dict):
            raise InputError(f"plaus[{a}]: expected an object")
        for w, pairs in per_state.items():
            plaus[(a, w)] = _check_pairs(pairs, f"plaus[{a}][{w}]")
    valuation = {}
    for p, xs in d["valuation"].items():
        if not isinstance(xs, list) or not all(isinstance(s, str) for s in xs):
            raise InputError(f"valuation[{p}]: expected a list of states")
        valuation[p] = xs
    return Model(d["states"], d["agents"], epist, plaus, valuation)


def model_to_json(m: Model) -> str:
    """Serialize with sorted keys and sorted arrays; byte-stable."""
    return json.dumps(model_to_dict(m), indent=2, sort_keys=True) + "\n"


def model_from_json(text: str) -> Model:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"not valid JSON: {e}") from None
    return model_from_dict(doc)


def load_model(path, check: bool = True) -> Model:
    with open(path, "r", encoding="utf-8") as fh:
        m = model_from_json(fh.read())
    if check:
        problems = validate(m)
        if problems:
            raise InputError(f"invalid model in {path}: " + "; ".join(problems))
    return m


def save_model(m: Model, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(model_to_json(m))
