import pytest
from hypothesis import given, settings

from plausikit import (Evaluator, InputError, Model, eq_class, holds,
                       identity_pairs, is_valid_on, min_set, parse, total_pairs,
                       truth_set)

from helpers import (DISCRETE2, TOTAL2, model_with_formula, models, ref_holds,
                     two_state)


class TestHolds:
    def test_knowledge_of_truth_is_universal(self):
        m = two_state(TOTAL2, TOTAL2, atoms={"p": {"w"}})
        for w in m.states:
            assert holds(m, w, parse("K[a] true"))

    def test_safe_belief_depends_on_the_order(self):
        discrete = two_state(DISCRETE2, DISCRETE2, atoms={"p": {"w"}})
        flat = two_state(TOTAL2, TOTAL2, atoms={"p": {"w"}})
        assert holds(discrete, "w", parse("Bplus[a] p"))
        assert not holds(flat, "w", parse("Bplus[a] p"))

    def test_strict_plausibility_sees_only_strictly_better_states(self):
        sharp = two_state(DISCRETE2 | {("v", "w")}, DISCRETE2,
                          atoms={"p": {"v", "w"}})
        flat = two_state(TOTAL2, TOTAL2, atoms={"p": {"v", "w"}})
        assert holds(sharp, "w", parse("GtDia[a] true"))
        assert not holds(flat, "w", parse("GtDia[a] true"))

    def test_conditional_belief_uses_most_plausible_condition_states(self):
        m = two_state(DISCRETE2 | {("v", "w")}, DISCRETE2,
                      atoms={"p": {"v", "w"}, "q": {"v"}})
        # v is strictly more plausible at w, so only v matters for B[a|p].
        assert holds(m, "w", parse("B[a | p] q"))
        assert not holds(m, "w", parse("B[a | p] ~q"))

    def test_announcement_is_vacuous_where_the_content_fails(self):
        m = two_state(TOTAL2, TOTAL2, atoms={"p": {"w"}})
        assert holds(m, "v", parse("[! p] false"))
        assert not holds(m, "w", parse("[! p] false"))

    def test_unknown_state_and_agent_rejected(self):
        m = two_state(TOTAL2, TOTAL2)
        with pytest.raises(InputError):
            holds(m, "z", parse("true"))
        with pytest.raises(InputError):
            holds(m, "w", parse("K[c] true"))


class TestTruthSet:
    def test_truth_constant(self):
        m = two_state(TOTAL2, TOTAL2)
        assert truth_set(m, parse("true")) == {"v", "w"}

    def test_atom_reads_valuation(self):
        m = two_state(TOTAL2, TOTAL2, atoms={"p": {"w"}})
        assert truth_set(m, parse("p")) == {"w"}
        assert truth_set(m, parse("q")) == frozenset()

    def test_plain_belief_is_belief_conditional_on_truth(self):
        m = two_state(TOTAL2, DISCRETE2 | {("v", "w")}, atoms={"p": {"v"}})
        direct = frozenset(
            w for w in m.states
            if min_set(m, "a", w, eq_class(m, "a", w)) <= truth_set(m, parse("p")))
        assert truth_set(m, parse("B[a | true] p")) == direct


class TestValidity:
    def test_tautology(self):
        m = two_state(TOTAL2, TOTAL2, atoms={"p": {"w"}})
        ok, witness = is_valid_on(m, parse("p -> p"))
        assert ok and witness is None

    def test_least_falsifying_state_reported(self):
        m = two_state(TOTAL2, TOTAL2, atoms={"p": {"w"}})
        ok, witness = is_valid_on(m, parse("p"))
        assert not ok and witness == "v"

    def test_introspection_valid_on_a_uniform_model(self):
        m = two_state(TOTAL2, TOTAL2, atoms={"p": {"w"}, "q": {"v"}})
        ok, _ = is_valid_on(m, parse("B[a | p] q -> K[a] B[a | p] q"))
        assert ok

    def test_introspection_can_fail_without_uniformity(self):
        # brute-force search over shallow instances on a non-uniform model
        from plausikit import CondBelief, Fragment, Implies, Know, enumerate_formulas
        m = two_state(DISCRETE2 | {("v", "w")}, DISCRETE2,
                      atoms={"p": {"v", "w"}, "q": {"v"}})
        shallow = list(enumerate_formulas(["p", "q"], ["a"], Fragment.of("K"), 1))
        witnesses = []
        for alpha in shallow:
            for phi in shallow:
                belief = CondBelief("a", alpha, phi)
                ok, state = is_valid_on(m, Implies(belief, Know("a", belief)))
                if not ok:
                    witnesses.append((alpha, phi, state))
        assert witnesses
        assert all(state in m.states for _, _, state in witnesses)


@settings(max_examples=120, deadline=None)
@given(model_with_formula())
def test_negation_flips_truth_exactly(mf):
    from plausikit import Not
    m, f = mf
    full = frozenset(m.states)
    sat = truth_set(m, f)
    assert truth_set(m, Not(f)) == full - sat


@settings(max_examples=200, deadline=None)
@given(model_with_formula(max_states=3, max_depth=4))
def test_agreement_with_reference_evaluator(mf):
    m, f = mf
    ev = Evaluator()
    for w in m.states:
        assert (w in ev.truth_set(m, f)) == ref_holds(m, w, f)


@settings(max_examples=100, deadline=None)
@given(model_with_formula())
def test_shared_evaluator_matches_fresh_evaluation(mf):
    m, f = mf
    shared = Evaluator()
    a = shared.truth_set(m, f)
    b = shared.truth_set(m, f)
    assert a == b == truth_set(m, f)


def test_transformed_models_are_memoized_per_announced_formula():
    from plausikit import And, Announce
    m = two_state(TOTAL2, TOTAL2, atoms={"p": {"w"}, "q": {"v", "w"}})
    ev = Evaluator()
    ev.truth_set(m, And(Announce(parse("p"), parse("q")),
                        Announce(parse("p"), parse("~q"))))
    assert len(ev._announced) == 1
