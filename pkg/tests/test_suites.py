import pytest

from plausikit import InputError, run_suite, suite_names
from plausikit.suites import DEFAULT_SEED, suite_description


def test_registry_contains_every_documented_suite():
    expected = {
        "thm9-K", "thm9-Bplus", "thm9-Bc", "thm11-KBc", "thm11-KBplus",
        "thm13", "thm17", "thm18", "thm22", "thm24-1", "thm24-2", "thm24-3",
        "thm24-4", "thm26", "thm27", "thm28-1", "thm28-2", "thm29",
        "reduction", "fact5", "fact30", "pairfamily",
    }
    assert set(suite_names()) == expected
    for name in expected:
        assert suite_description(name)


def test_unknown_suite_rejected():
    with pytest.raises(InputError, match="unknown suite"):
        run_suite("thm999")


def test_reports_carry_reproduction_seed_and_timing():
    report = run_suite("thm9-K", trials=20, seed=5)
    assert report.ok
    assert report.seed == 5
    assert report.trials == 20
    assert report.elapsed >= 0.0
    assert report.lines()[0].startswith("suite thm9-K: trials=20 failures=0")


def test_same_seed_reproduces_the_same_report_lines():
    a = run_suite("reduction", trials=15, seed=77)
    b = run_suite("reduction", trials=15, seed=77)
    assert a.lines()[0].split("elapsed")[0] == b.lines()[0].split("elapsed")[0]
    assert a.failures == b.failures == []


def test_environment_variable_overrides_the_default_seed(monkeypatch):
    monkeypatch.setenv("PLAUSIKIT_SEED", "12345")
    report = run_suite("thm9-K", trials=5)
    assert report.seed == 12345
    monkeypatch.delenv("PLAUSIKIT_SEED")
    assert run_suite("thm9-K", trials=5).seed == DEFAULT_SEED


def test_structural_relations_sit_inside_conditional_belief_equivalence():
    # the two containment suites that are not part of the acceptance wall
    assert run_suite("thm24-4", trials=60, seed=3).ok
    assert run_suite("thm28-2", trials=60, seed=3).ok


def test_exhaustive_translation_suites_report_model_counts():
    gt = run_suite("thm22")
    assert gt.ok and gt.trials == 358
    safe = run_suite("thm27")
    assert safe.ok and safe.trials == 202


def test_failure_lines_carry_full_reproduction_data():
    from plausikit import Model, parse
    from plausikit.suites import _agreement_failures
    left = Model(["w"], ["a"], {"a": {("w", "w")}},
                 {("a", "w"): {("w", "w")}}, {"p": {"w"}})
    right = Model(["x"], ["a"], {"a": {("x", "x")}},
                  {("a", "x"): {("x", "x")}}, {"p": set()})
    failures = _agreement_failures(left, right, {("w", "x")}, [parse("p")],
                                   trial=4, trial_seed=99)
    assert len(failures) == 1
    line = failures[0]
    assert "trial=4" in line
    assert "seed=99" in line
    assert "formula=p" in line
    assert line.count("model=") == 2
    assert '"states"' in line


def test_suite_report_lines_include_failures():
    from plausikit.suites import SuiteReport
    report = SuiteReport("demo", 3, failures=["trial=0 seed=1 boom"],
                         elapsed=0.5, seed=1)
    assert not report.ok
    lines = report.lines()
    assert lines[0].startswith("suite demo: trials=3 failures=1")
    assert lines[1] == "  FAIL trial=0 seed=1 boom"
