"""Smoke tests for the python bindings."""

import math

import pytest

import stacky


def test_group_basics():
    g = stacky.PermGroup.parse("degree=6; gens=(1,2,3)|(4,5,6)|(1,4)(2,5)(3,6)")
    assert g.order() == 18
    assert g.exponent() == 6
    classes = g.conjugacy_classes()
    reps = {c["representative"] for c in classes}
    assert "(1,2,3)" in reps


def test_sector_table_matches_table1():
    prod = stacky.parse_stack("prod(wps(2,3),mu(2))")
    rows = stacky.sector_table(prod, "builtin:quasitoric+table:{1/2:1}")
    assert [r["age_c"] for r in rows] == ["0", "1", "2", "3", "3", "4", "4", "5"]
    assert stacky.junior_count(prod, "builtin:quasitoric+table:{1/2:1}") == 1


def test_invariants():
    bg = stacky.parse_stack("bg(degree=6; gens=(1,2,3)|(4,5,6)|(1,4)(2,5)(3,6); field=Q)")
    a, b = stacky.ab_invariants(bg, "builtin:index")
    assert (a, b) == ("1/2", 1)
    rep = stacky.invariants(stacky.parse_stack("wps(2,3)"), "builtin:quasitoric")
    assert rep["prediction"] == "C*B^(1)*(log B)^0"


def test_kluners_report():
    rep = stacky.kluners_report()
    assert rep["a"] == "1/2" and rep["b"] == 1
    verdicts = {v["source"]: v["verdict"] for v in rep["twist_verdicts"]}
    assert verdicts == {
        "trivial": "breaking",
        "synchronized": "breaking",
        "independent": "weakly-breaking-only",
    }
    assert rep["witness"] == "(1,2,3)"


def test_heights_and_residues():
    assert stacky.mu_residue(12, 2, 3) == 2
    h = stacky.mu_height(-15, 2, "table:{1:1}")
    assert h["value"] == pytest.approx(15.0)
    assert stacky.wps_residue([1, 1, 2], [5, 5, 5], 5) == "1/2"
    qt = stacky.wps_height([2, 3], [2, 3], "quasitoric")
    assert qt["value"] == pytest.approx(3.0 ** (5.0 / 3.0))


def test_counting_against_oracles():
    samples = stacky.mu_count(2, "table:{1:1}", [10.0, 100.0, 1000.0])
    assert [n for _, n in samples] == [
        stacky.mu_sieve_oracle(2, "table:{1:1}", b) for b in (10, 100, 1000)
    ]
    thresholds = list(range(1, 51))
    counted = stacky.wps_count([2, 3], "quasitoric", thresholds)
    oracle = stacky.wps_oracle_counts([2, 3], "quasitoric", thresholds)
    assert [n for _, n in counted] == oracle


def test_fit():
    samples = [(float(b), int(7 * b)) for b in (10**4, 10**5, 10**6, 10**7, 10**8)]
    fit = stacky.fit_exponents(samples)
    assert fit["alpha"] == pytest.approx(1.0, abs=1e-6)
    assert fit["log_exponent"] == pytest.approx(0.0, abs=1e-4)


def test_errors_are_python_exceptions():
    with pytest.raises(stacky.StackyError):
        stacky.parse_stack("wps(0,1)")
    with pytest.raises(stacky.StackyError):
        stacky.mu_residue(0, 2, 3)
