import json

import pytest
from hypothesis import given, settings

from plausikit import (InputError, Model, eq_class, identity_pairs,
                       is_image_finite, is_locally_connected, is_uniform,
                       connectedness_counterexample, load_model,
                       min_set, model_from_json, model_to_dict, model_to_json,
                       save_model, strict, total_pairs,
                       uniformity_counterexample, validate)

from helpers import DISCRETE2, TOTAL2, models, two_state


def one_state(epist=None, plaus=None):
    return Model(
        ["w"], ["a"],
        {"a": epist if epist is not None else {("w", "w")}},
        {("a", "w"): plaus if plaus is not None else {("w", "w")}},
        {},
    )


class TestValidate:
    def test_minimal_reflexive_model_is_valid(self):
        assert validate(one_state()) == []

    def test_empty_epistemic_relation_is_one_reflexivity_violation(self):
        assert validate(one_state(epist=set())) == ["epist[a] not reflexive at 'w'"]

    def test_unknown_state_in_plausibility_pairs_is_named(self):
        m = Model(
            ["v", "w"], ["a"],
            {"a": total_pairs(["v", "w"])},
            {("a", "w"): {("w", "w"), ("v", "v"), ("w", "v"), ("v", "u")},
             ("a", "v"): identity_pairs(["v", "w"])},
            {},
        )
        problems = validate(m)
        assert any("unknown state 'u'" in p for p in problems)

    def test_missing_plausibility_entry_reported(self):
        m = Model(["v", "w"], ["a"], {"a": total_pairs(["v", "w"])},
                  {("a", "w"): identity_pairs(["v", "w"])}, {})
        assert "no plausibility order for ('a', 'v')" in validate(m)

    def test_symmetry_and_transitivity_checked(self):
        states = ["u", "v", "w"]
        m = Model(states, ["a"],
                  {"a": identity_pairs(states) | {("u", "v")}},
                  {("a", s): identity_pairs(states) for s in states}, {})
        problems = validate(m)
        assert any("not symmetric" in p for p in problems)

    def test_bad_identifier(self):
        m = Model(["w w"], ["a"], {"a": {("w w", "w w")}},
                  {("a", "w w"): {("w w", "w w")}}, {})
        assert any("bad state identifier" in p for p in validate(m))


class TestEqClass:
    def test_total_relation(self):
        m = two_state(TOTAL2, TOTAL2)
        assert eq_class(m, "a", "w") == {"v", "w"}

    def test_identity_relation(self):
        m = Model(["v", "w"], ["a"], {"a": identity_pairs(["v", "w"])},
                  {("a", s): identity_pairs(["v", "w"]) for s in ["v", "w"]}, {})
        assert eq_class(m, "a", "w") == {"w"}

    def test_three_states_two_classes(self):
        states = ["u", "v", "w"]
        cls = identity_pairs(states) | {("w", "v"), ("v", "w")}
        m = Model(states, ["a"], {"a": cls},
                  {("a", s): identity_pairs(states) for s in states}, {})
        assert eq_class(m, "a", "u") == {"u"}
        assert eq_class(m, "a", "w") == {"v", "w"}

    def test_unknown_agent_or_state(self):
        m = one_state()
        with pytest.raises(InputError):
            eq_class(m, "b", "w")
        with pytest.raises(InputError):
            eq_class(m, "a", "z")


class TestMinSet:
    def test_singleton(self):
        m = one_state()
        assert min_set(m, "a", "w", {"w"}) == {"w"}

    def test_incomparable_states_are_all_minimal(self):
        m = two_state(DISCRETE2, DISCRETE2)
        assert min_set(m, "a", "w", {"v", "w"}) == {"v", "w"}

    def test_strictly_better_state_wins(self):
        # v strictly more plausible than w at the order held at w
        m = two_state(DISCRETE2 | {("v", "w")}, DISCRETE2)
        assert min_set(m, "a", "w", {"v", "w"}) == {"v"}

    def test_unknown_member_rejected(self):
        m = one_state()
        with pytest.raises(InputError):
            min_set(m, "a", "w", {"z"})


class TestStrict:
    def test_discrete_order_has_no_strict_pairs(self):
        m = two_state(DISCRETE2, DISCRETE2)
        so = strict(m)
        assert so.lt[("a", "w")] == frozenset()
        assert so.eqv[("a", "w")] == frozenset(DISCRETE2)

    def test_total_order_is_all_ties(self):
        m = two_state(TOTAL2, TOTAL2)
        so = strict(m)
        assert so.lt[("a", "w")] == frozenset()
        assert so.eqv[("a", "w")] == frozenset(TOTAL2)

    def test_one_sided_pair_is_strict(self):
        m = two_state(DISCRETE2 | {("v", "w")}, DISCRETE2)
        so = strict(m)
        assert so.lt[("a", "w")] == {("v", "w")}
        assert so.eqv[("a", "w")] == frozenset(DISCRETE2)


class TestUniformity:
    def test_constant_family_is_uniform(self):
        m = two_state(TOTAL2, TOTAL2)
        assert is_uniform(m)

    def test_divergent_orders_in_one_class_break_uniformity(self):
        m = two_state(DISCRETE2 | {("v", "w")}, DISCRETE2)
        assert not is_uniform(m)
        assert uniformity_counterexample(m) == ("a", "v", "w", ("v", "w"))

    def test_identity_classes_make_uniformity_vacuous(self):
        states = ["v", "w"]
        m = Model(states, ["a"], {"a": identity_pairs(states)},
                  {("a", "w"): frozenset(TOTAL2), ("a", "v"): frozenset(DISCRETE2)},
                  {})
        assert is_uniform(m)


class TestLocalConnectedness:
    def test_total_orders_are_connected(self):
        assert is_locally_connected(two_state(TOTAL2, TOTAL2))

    def test_incomparable_class_members_are_not(self):
        m = two_state(DISCRETE2, DISCRETE2)
        assert not is_locally_connected(m)
        assert connectedness_counterexample(m) == ("a", "v", "w")

    def test_identity_classes_are_vacuously_connected(self):
        states = ["v", "w"]
        m = Model(states, ["a"], {"a": identity_pairs(states)},
                  {("a", s): identity_pairs(states) for s in states}, {})
        assert is_locally_connected(m)


def test_image_finiteness_holds_for_every_model():
    assert is_image_finite(one_state())
    assert is_image_finite(two_state(TOTAL2, TOTAL2))


# ---------------------------------------------------------------------------
# Properties

@settings(max_examples=150, deadline=None)
@given(models())
def test_generated_models_are_valid(m):
    assert validate(m) == []


@settings(max_examples=150, deadline=None)
@given(models())
def test_min_set_nonempty_on_nonempty_input(m):
    import itertools
    states = list(m.states)
    for a in m.agents:
        for w in states:
            for r in range(1, len(states) + 1):
                for xs in itertools.combinations(states, r):
                    assert min_set(m, a, w, xs)


@settings(max_examples=150, deadline=None)
@given(models())
def test_min_set_matches_strict_order_characterization(m):
    import itertools
    so = strict(m)
    states = list(m.states)
    for a in m.agents:
        for w in states:
            lt = so.lt[(a, w)]
            for r in range(len(states) + 1):
                for xs in itertools.combinations(states, r):
                    xs = frozenset(xs)
                    by_strict = frozenset(
                        x for x in xs if not any((y, x) in lt for y in xs))
                    assert min_set(m, a, w, xs) == by_strict


@settings(max_examples=150, deadline=None)
@given(models())
def test_strict_parts_partition_each_preorder(m):
    so = strict(m)
    for key, rel in m.plaus.items():
        assert so.lt[key] | so.eqv[key] == rel
        assert not (so.lt[key] & so.eqv[key])


@settings(max_examples=150, deadline=None)
@given(models())
def test_uniformity_and_connectedness_match_double_loop_oracle(m):
    uniform = all(
        m.plaus[(a, w)] == m.plaus[(a, v)]
        for a in m.agents for w in m.states for v in m.states
        if (w, v) in m.epist[a])
    connected = all(
        (w, v) in m.plaus[(a, w)] or (v, w) in m.plaus[(a, w)]
        for a in m.agents for w in m.states for v in m.states
        if (w, v) in m.epist[a])
    assert is_uniform(m) == uniform
    assert is_locally_connected(m) == connected


# ---------------------------------------------------------------------------
# Serialization

GOLDEN = """\
{
  "agents": [
    "a"
  ],
  "epist": {
    "a": [
      [
        "v",
        "v"
      ],
      [
        "v",
        "w"
      ],
      [
        "w",
        "v"
      ],
      [
        "w",
        "w"
      ]
    ]
  },
  "plaus": {
    "a": {
      "v": [
        [
          "v",
          "v"
        ],
        [
          "w",
          "w"
        ]
      ],
      "w": [
        [
          "v",
          "v"
        ],
        [
          "w",
          "w"
        ]
      ]
    }
  },
  "states": [
    "v",
    "w"
  ],
  "valuation": {
    "p": [
      "w"
    ]
  }
}
"""


def test_serialization_is_byte_stable():
    m = two_state(DISCRETE2, DISCRETE2, atoms={"p": {"w"}})
    assert model_to_json(m) == GOLDEN


@settings(max_examples=100, deadline=None)
@given(models())
def test_json_round_trip(m):
    assert model_from_json(model_to_json(m)) == m


def test_file_round_trip(tmp_path):
    m = two_state(TOTAL2, TOTAL2, atoms={"p": {"w"}})
    path = tmp_path / "m.json"
    save_model(m, path)
    assert load_model(path) == m


def test_load_rejects_invalid_model(tmp_path):
    bad = model_to_dict(one_state())
    bad["epist"]["a"] = []
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    with pytest.raises(InputError, match="not reflexive"):
        load_model(path)


def test_malformed_documents_rejected():
    with pytest.raises(InputError, match="missing keys"):
        model_from_json("{}")
    with pytest.raises(InputError, match="not valid JSON"):
        model_from_json("{")
    with pytest.raises(InputError, match="malformed pair"):
        model_from_json(json.dumps({
            "states": ["w"], "agents": ["a"],
            "epist": {"a": [["w"]]}, "plaus": {"a": {"w": []}},
            "valuation": {}}))
