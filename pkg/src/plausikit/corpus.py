"""Built-in corpus of small model pairs with frozen expected verdicts.

Each entry packages two models, a candidate relation and the verdicts that
make the pair interesting: which notions of bisimulation the relation
satisfies, which formula tells the distinguished points apart, and the truth
facts behind it.  Every stored verdict is re-derived by the live toolkit on
load; a mismatch is a regression and aborts with a diff.

Entries (names are stable identifiers used by the CLI and the test suite):

* ``thm15`` - left orders discrete, right orders total, one atom true at the
  distinguished points only.  The pairing is a knowledge bisimulation and a
  conditional-belief bisimulation, yet safe belief separates the points, so
  safe belief is not expressible from knowledge and conditional belief.
* ``thm21`` - all atoms true everywhere; the left model makes one state
  strictly more plausible at one evaluation point, the right model is flat.
  The distinguished points agree on every formula built from knowledge,
  safe belief and conditional belief, but the strict-plausibility modality
  separates them, so that modality is genuinely new.
* ``thm14`` - a three-state/two-state pair whose pairing is a knowledge and
  safe-belief bisimulation while a conditional belief separates the points,
  so conditional belief is not expressible from knowledge and safe belief.
  The shape is reconstructed from the constraints the separation forces
  (incomparable most-plausible states on the left, a flat condition zone on
  the right) and machine-verified here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bisim import (Relation, check_bc, check_structural, greatest_structural,
                    hennessy_milner, modal_equiv)
from .model import (Model, identity_pairs, is_locally_connected, is_uniform,
                    min_set, total_pairs, validate)
from .semantics import holds, truth_set
from .syntax import Fragment, parse

__all__ = ["CorpusEntry", "CorpusError", "load_corpus", "corpus_names"]


class CorpusError(RuntimeError):
    """A stored corpus verdict is no longer reproduced by the toolkit."""


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    summary: str
    left: Model
    right: Model
    relation: Relation
    distinguishing: str            # formula text separating the points
    point: tuple                   # the (left state, right state) it separates
    verdicts: tuple                # (label, expected, thunk) triples

    def check(self) -> list[str]:
        """Re-derive every stored verdict; returns mismatch descriptions."""
        problems = []
        for label, expected, thunk in self.verdicts:
            actual = thunk()
            if actual != expected:
                problems.append(
                    f"{self.name}: {label}: expected {expected!r}, got {actual!r}")
        return problems


def _entry_thm15() -> CorpusEntry:
    states = ["v", "w"]
    left = Model(
        states, ["a"],
        {"a": total_pairs(states)},
        {("a", "v"): identity_pairs(states), ("a", "w"): identity_pairs(states)},
        {"p": {"w"}},
    )
    rstates = ["vr", "wr"]
    right = Model(
        rstates, ["a"],
        {"a": total_pairs(rstates)},
        {("a", "vr"): total_pairs(rstates), ("a", "wr"): total_pairs(rstates)},
        {"p": {"wr"}},
    )
    rel = Relation(left, right, frozenset({("v", "vr"), ("w", "wr")}))
    safe_p = parse("Bplus[a] p")
    verdicts = (
        ("left and right are valid models", [],
         lambda: validate(left) + validate(right)),
        ("Z is a K-bisimulation", True,
         lambda: check_structural(rel, Fragment.of("K")).ok),
        ("Z is a K+Bc-bisimulation", True,
         lambda: check_bc(rel, Fragment.of("K", "Bc")).ok),
        ("Z is not a K+Bplus-bisimulation", False,
         lambda: check_structural(rel, Fragment.of("K", "Bplus")).ok),
        ("safe belief in p holds at left w", True,
         lambda: holds(left, "w", safe_p)),
        ("safe belief in p fails at right wr", False,
         lambda: holds(right, "wr", safe_p)),
        ("greatest K+Bplus relation excludes (w, wr)", False,
         lambda: ("w", "wr") in greatest_structural(
             left, right, Fragment.of("K", "Bplus")).pairs),
        ("points are K+Bc equivalent", True,
         lambda: modal_equiv(left, "w", right, "wr", Fragment.of("K", "Bc"))),
        ("equivalence relation passes the K+Bc check", True,
         lambda: hennessy_milner(left, right).ok),
    )
    return CorpusEntry(
        name="thm15",
        summary="safe belief is not expressible from knowledge and conditional belief",
        left=left, right=right, relation=rel,
        distinguishing="Bplus[a] p", point=("w", "wr"),
        verdicts=verdicts)


def _entry_thm21() -> CorpusEntry:
    states = ["v", "w"]
    left = Model(
        states, ["a"],
        {"a": total_pairs(states)},
        {("a", "w"): identity_pairs(states) | {("v", "w")},
         ("a", "v"): identity_pairs(states)},
        {"p": {"v", "w"}},
    )
    rstates = ["vr", "wr"]
    right = Model(
        rstates, ["a"],
        {"a": total_pairs(rstates)},
        {("a", "vr"): total_pairs(rstates), ("a", "wr"): total_pairs(rstates)},
        {"p": {"vr", "wr"}},
    )
    rel = Relation(left, right, frozenset({("v", "vr"), ("w", "wr")}))
    gtdia_true = parse("GtDia[a] true")
    big = Fragment.of("K", "Bplus", "Bc")
    verdicts = (
        ("left and right are valid models", [],
         lambda: validate(left) + validate(right)),
        ("points are K+Bplus+Bc equivalent at (w, wr)", True,
         lambda: modal_equiv(left, "w", right, "wr", big)),
        ("points are K+Bplus+Bc equivalent at (v, vr)", True,
         lambda: modal_equiv(left, "v", right, "vr", big)),
        ("a strictly better state is seen at left w", True,
         lambda: holds(left, "w", gtdia_true)),
        ("no strictly better state is seen at right wr", False,
         lambda: holds(right, "wr", gtdia_true)),
        ("points are not K+Gt equivalent", False,
         lambda: modal_equiv(left, "w", right, "wr", Fragment.of("K", "Gt"))),
        ("left model is not uniform", False, lambda: is_uniform(left)),
        ("right model is uniform", True, lambda: is_uniform(right)),
        ("equivalence relation passes the K+Bc check", True,
         lambda: hennessy_milner(left, right).ok),
    )
    return CorpusEntry(
        name="thm21",
        summary="the strict-plausibility modality is not expressible from K, Bplus and Bc",
        left=left, right=right, relation=rel,
        distinguishing="GtDia[a] true", point=("w", "wr"),
        verdicts=verdicts)


def _entry_thm14() -> CorpusEntry:
    states = ["u", "v", "w"]
    shared = identity_pairs(states) | {("w", "u")}
    left = Model(
        states, ["a"],
        {"a": total_pairs(states)},
        {("a", s): shared for s in states},
        {"p": {"u", "v", "w"}, "q": {"v", "w"}},
    )
    rstates = ["ur", "wr"]
    right = Model(
        rstates, ["a"],
        {"a": total_pairs(rstates)},
        {("a", "wr"): identity_pairs(rstates),
         ("a", "ur"): identity_pairs(rstates) | {("wr", "ur")}},
        {"p": {"ur", "wr"}, "q": {"wr"}},
    )
    rel = Relation(left, right, frozenset({("w", "wr"), ("v", "wr"), ("u", "ur")}))
    cond_pq = parse("B[a | p] q")
    verdicts = (
        ("left and right are valid models", [],
         lambda: validate(left) + validate(right)),
        ("most plausible left p-states are v and w", frozenset({"v", "w"}),
         lambda: min_set(left, "a", "w", truth_set(left, parse("p")))),
        ("most plausible right p-states are ur and wr", frozenset({"ur", "wr"}),
         lambda: min_set(right, "a", "wr", truth_set(right, parse("p")))),
        ("Z is a K+Bplus-bisimulation", True,
         lambda: check_structural(rel, Fragment.of("K", "Bplus")).ok),
        ("belief in q given p holds at left w", True,
         lambda: holds(left, "w", cond_pq)),
        ("belief in q given p fails at right wr", False,
         lambda: holds(right, "wr", cond_pq)),
        ("Z is not a K+Bc-bisimulation", False,
         lambda: check_bc(rel, Fragment.of("K", "Bc")).ok),
        ("left model is uniform", True, lambda: is_uniform(left)),
        ("left model is not locally connected", False,
         lambda: is_locally_connected(left)),
        ("equivalence relation passes the K+Bc check", True,
         lambda: hennessy_milner(left, right).ok),
    )
    return CorpusEntry(
        name="thm14",
        summary="conditional belief is not expressible from knowledge and safe belief",
        left=left, right=right, relation=rel,
        distinguishing="B[a | p] q", point=("w", "wr"),
        verdicts=verdicts)


def load_corpus() -> list[CorpusEntry]:
    """Build the corpus and re-derive every stored verdict.  Raises
    :class:`CorpusError` with a diff when anything fails to reproduce."""
    entries = [_entry_thm14(), _entry_thm15(), _entry_thm21()]
    problems = []
    for entry in entries:
        problems.extend(entry.check())
    if problems:
        raise CorpusError(
            "corpus verdicts not reproduced:\n" + "\n".join(problems))
    return entries


def corpus_names() -> list[str]:
    return ["thm14", "thm15", "thm21"]
