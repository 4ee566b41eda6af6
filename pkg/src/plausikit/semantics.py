"""Exact model checking of the full language on finite models.

Truth sets are computed bottom-up with memoization of subformula results.
Dynamic operators are evaluated by materializing the transformed model;
transformed models are memoized per (model, formula) within one evaluation
session.  Caches live inside an :class:`Evaluator` instance and are never
shared between calls unless the caller shares the evaluator, so the module
is safe under concurrent use of distinct evaluators.
"""

from __future__ import annotations

from .dynamics import announce_restrict, upgrade_promote
from .errors import InputError
from .model import Model, eq_class, min_set
from .syntax import (And, Announce, Atom, Bot, CondBelief, Formula, GtBox,
                     Implies, Know, Not, Or, SafeBelief, Top, Upgrade)

__all__ = ["Evaluator", "holds", "truth_set", "is_valid_on"]


class Evaluator:
    """Evaluation session with shared caches.

    Reusing one evaluator across many formulas on the same model lets common
    subformulas and transformed models be computed once.
    """

    def __init__(self):
        self._truth: dict = {}
        self._announced: dict = {}
        self._upgraded: dict = {}

    def truth_set(self, m: Model, f: Formula) -> frozenset:
        key = (m, f)
        cached = self._truth.get(key)
        if cached is not None:
            return cached
        result = self._compute(m, f)
        self._truth[key] = result
        return result

    def _compute(self, m: Model, f: Formula) -> frozenset:
        all_states = frozenset(m.states)
        if isinstance(f, Atom):
            return m.atom_extension(f.name)
        if isinstance(f, Top):
            return all_states
        if isinstance(f, Bot):
            return frozenset()
        if isinstance(f, Not):
            return all_states - self.truth_set(m, f.sub)
        if isinstance(f, And):
            return self.truth_set(m, f.left) & self.truth_set(m, f.right)
        if isinstance(f, Or):
            return self.truth_set(m, f.left) | self.truth_set(m, f.right)
        if isinstance(f, Implies):
            return (all_states - self.truth_set(m, f.left)) | self.truth_set(m, f.right)
        if isinstance(f, Know):
            sub = self.truth_set(m, f.sub)
            return frozenset(
                w for w in m.states if eq_class(m, f.agent, w) <= sub)
        if isinstance(f, SafeBelief):
            sub = self.truth_set(m, f.sub)
            out = []
            for w in m.states:
                cls = eq_class(m, f.agent, w)
                rel = _order(m, f.agent, w)
                if all(v in sub for v in cls if (v, w) in rel):
                    out.append(w)
            return frozenset(out)
        if isinstance(f, GtBox):
            sub = self.truth_set(m, f.sub)
            out = []
            for w in m.states:
                cls = eq_class(m, f.agent, w)
                rel = _order(m, f.agent, w)
                strictly_below = (v for v in cls
                                  if (v, w) in rel and (w, v) not in rel)
                if all(v in sub for v in strictly_below):
                    out.append(w)
            return frozenset(out)
        if isinstance(f, CondBelief):
            cond = self.truth_set(m, f.cond)
            sub = self.truth_set(m, f.sub)
            out = []
            for w in m.states:
                best = min_set(m, f.agent, w, cond & eq_class(m, f.agent, w))
                if best <= sub:
                    out.append(w)
            return frozenset(out)
        if isinstance(f, Announce):
            heard = self.truth_set(m, f.ann)
            if not heard:
                return all_states  # vacuously true where the precondition fails
            key = (m, f.ann)
            reduced = self._announced.get(key)
            if reduced is None:
                reduced = announce_restrict(m, heard)
                self._announced[key] = reduced
            after = self.truth_set(reduced, f.sub)
            return (all_states - heard) | after
        if isinstance(f, Upgrade):
            winners = self.truth_set(m, f.up)
            key = (m, f.up)
            reshaped = self._upgraded.get(key)
            if reshaped is None:
                reshaped = upgrade_promote(m, winners)
                self._upgraded[key] = reshaped
            return self.truth_set(reshaped, f.sub)
        raise TypeError(f"not a formula: {f!r}")


def _order(m: Model, agent: str, state: str) -> frozenset:
    if agent not in m.agents:
        raise InputError(f"unknown agent {agent!r}")
    try:
        return m.plaus[(agent, state)]
    except KeyError:
        raise InputError(f"no plausibility order for ({agent!r}, {state!r})") from None


def truth_set(m: Model, f: Formula) -> frozenset:
    """States of m where f holds."""
    return Evaluator().truth_set(m, f)


def holds(m: Model, state: str, f: Formula) -> bool:
    """Truth of f at a single state."""
    if state not in m.states:
        raise InputError(f"unknown state {state!r}")
    return state in truth_set(m, f)


def is_valid_on(m: Model, f: Formula):
    """(True, None) when f holds at every state of m, else (False, w) with
    the least falsifying state."""
    sat = truth_set(m, f)
    for w in m.states:
        if w not in sat:
            return False, w
    return True, None
