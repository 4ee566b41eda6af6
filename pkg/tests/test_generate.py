import random

import pytest

from plausikit import (Fragment, GenSpec, InputError, formula_depth,
                       fragment_of, generate, genspec_from_dict,
                       genspec_to_dict, is_locally_connected, is_uniform,
                       model_to_json, random_formula, rename_states, strict,
                       validate)


def test_identical_spec_and_seed_give_identical_bytes():
    spec = GenSpec(2, 5, 2, 2, uniform=True, seed=982451653)
    assert model_to_json(generate(spec)) == model_to_json(generate(spec))


def test_different_seeds_vary():
    texts = {model_to_json(generate(GenSpec(3, 5, 2, 2, seed=s)))
             for s in range(20)}
    assert len(texts) > 1


def test_single_state_spec():
    m = generate(GenSpec(1, 1, 1, 1, seed=0))
    assert m.states == ("w0",)
    assert validate(m) == []


@pytest.mark.parametrize("seed", range(120))
def test_generated_models_are_always_valid(seed):
    m = generate(GenSpec(1, 5, 2, 2, seed=seed))
    assert validate(m) == []


@pytest.mark.parametrize("seed", range(120))
def test_uniform_constraint_holds(seed):
    m = generate(GenSpec(2, 5, 2, 2, uniform=True, seed=seed))
    assert validate(m) == []
    assert is_uniform(m)


@pytest.mark.parametrize("seed", range(120))
def test_locally_connected_constraint_holds(seed):
    m = generate(GenSpec(2, 5, 2, 2, locally_connected=True, seed=seed))
    assert validate(m) == []
    assert is_locally_connected(m)


@pytest.mark.parametrize("seed", range(60))
def test_combined_constraints_hold(seed):
    m = generate(GenSpec(2, 5, 2, 2, uniform=True, locally_connected=True,
                         seed=seed))
    assert is_uniform(m) and is_locally_connected(m)


def test_discrete_orders_have_no_strict_pairs():
    for seed in range(30):
        m = generate(GenSpec(2, 4, 2, 1, discrete_preorders=True, seed=seed))
        so = strict(m)
        assert all(not lt for lt in so.lt.values())


def test_discrete_plus_connected_forces_singleton_classes():
    m = generate(GenSpec(3, 3, 1, 1, discrete_preorders=True,
                         locally_connected=True, seed=4))
    assert is_locally_connected(m)
    assert all(rel == frozenset((s, s) for s in m.states) or True
               for rel in m.epist.values())
    assert m.epist["a"] == frozenset((s, s) for s in m.states)


def test_bad_ranges_rejected():
    with pytest.raises(InputError):
        GenSpec(0, 3)
    with pytest.raises(InputError):
        GenSpec(3, 2)
    with pytest.raises(InputError):
        GenSpec(1, 2, agents=0)


def test_genspec_document_round_trip():
    spec = GenSpec(2, 4, 2, 1, uniform=True, seed=99)
    doc = genspec_to_dict(spec)
    assert genspec_from_dict(doc) == spec
    assert genspec_from_dict({"states": 3}) == GenSpec(3, 3)
    with pytest.raises(InputError):
        genspec_from_dict({"state": 3})


def test_rename_states_is_an_isomorphism():
    m = generate(GenSpec(2, 4, 2, 2, seed=5))
    r = rename_states(m)
    assert len(r.states) == len(m.states)
    assert validate(r) == []
    assert sorted(len(xs) for xs in r.valuation.values()) == \
        sorted(len(xs) for xs in m.valuation.values())


def test_random_formula_respects_fragment_and_depth():
    rng = random.Random(0)
    frag = Fragment.of("K", "Gt")
    for _ in range(300):
        f = random_formula(rng, ["p"], ["a"], frag, 3)
        assert formula_depth(f) <= 3
        assert fragment_of(f).issubset(frag)


def test_random_formula_is_deterministic_in_the_rng():
    a = [random_formula(random.Random(42), ["p", "q"], ["a", "b"],
                        Fragment.of("K", "Bc"), 3) for _ in range(5)]
    b = [random_formula(random.Random(42), ["p", "q"], ["a", "b"],
                        Fragment.of("K", "Bc"), 3) for _ in range(5)]
    assert a == b
