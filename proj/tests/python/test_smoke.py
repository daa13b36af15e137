from fractions import Fraction
import json

import pytest

import padicdyn


def test_norm():
    assert padicdyn.norm("9", 3) == "3^(-2)"
    assert padicdyn.norm("1/2", 2) == "2^(1)"
    assert padicdyn.norm("0", 5) == "0"


def test_classify():
    rep = padicdyn.classify(3, 1, 0, 3)
    assert rep["classification"]["norm_case"]["case"] == "C1"
    assert rep["classification"]["x2_geometry"]["kind"] == "SiegelEqualsX1"


def test_fraction_input():
    rep = padicdyn.classify(Fraction(1, 3), 1, 0, 3)
    assert rep["map"]["a"] == "1/3"


def test_norm_trace():
    t = padicdyn.norm_trace(Fraction(1, 3), 1, 0, 3, "3^(-1/2)", 4)
    assert t["radii"] == ["3^(-1/2)", "3^(0)"]


def test_ergodicity():
    v = padicdyn.erg2_verdict(4, 8, -6, "2^(-3)")
    assert v["ergodic"] and v["condition"] == 1
    w = padicdyn.not_ergodic_p_odd(3, 1, 0, 3, "3^(-2)")
    assert padicdyn.to_fraction(w["measure"]) == Fraction(1, 18)
    assert padicdyn.haar_measure(3, "3^(0)", "3^(-1)") == "1/2"


def test_domain_error():
    with pytest.raises(padicdyn.DomainError) as e:
        padicdyn.haar_measure(3, "3^(0)", "3^(0)")
    assert e.value.kind == "BallExceedsSphere"
    with pytest.raises(padicdyn.DomainError) as e:
        padicdyn.erg2_verdict(3, 1, 0, "2^(0)")
    assert e.value.kind in ("NotInvariant", "WrongCase", "UnhandledBoundary", "NormBoundViolated")


def test_suite():
    assert "tpk" in padicdyn.suite_names()
    r = padicdyn.run_suite("tpk")
    assert r["passed"]


def test_cli():
    code, out, _ = padicdyn.cli("classify", "--map", "3,1,0", "--prime", "3")
    assert code == 0
    assert json.loads(out)["classification"]["norm_case"]["case"] == "C1"
    code, _, _ = padicdyn.cli("classify", "--prime", "3")
    assert code == 2
