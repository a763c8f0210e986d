from dataclasses import replace

import pytest

from conftest import balance, expansion, model
from ptpainleve.frontend import builtin, parse_system
from ptpainleve.painleve import (
    DEFECTIVE,
    FAILS,
    PASSES,
    classify,
    dominant_balance,
    painleve_test,
    residual,
    resonance_spectrum,
    solved_orders_vanish,
)
from ptpainleve.symcore import GaussRational

CASES = [
    ("burgers", 2, "reduced", 5, None),
    ("burgers", 2, "reduced", 14, GaussRational(0)),
    ("burgers", 2, "travelling", 30, GaussRational(0)),
    ("kdv", 2, "reduced", 21, None),
    ("kdv", 2, "travelling", 33, None),
    ("kdv", 1, "general", 6, None),
    ("burgers", 3, "general", 2, None),
]


@pytest.mark.parametrize("name, eps, mode, order, lam", CASES)
def test_residual_vanishes_at_solved_orders(name, eps, mode, order, lam):
    ex = expansion(name, eps, mode, order, lam)
    ok, bad = solved_orders_vanish(model(name, eps), balance(name, eps), ex)
    assert ok, bad


@pytest.mark.parametrize("index", [3, 9, 18, 29])
def test_residual_detects_corruption(index):
    ex = expansion("burgers", 2, "travelling", 30, GaussRational(0))
    coeffs = list(ex.coefficients)
    coeffs[index] = coeffs[index] + ex.coefficients[0]
    ok, bad = solved_orders_vanish(model("burgers", 2), balance("burgers", 2), replace(ex, coefficients=tuple(coeffs)))
    assert not ok
    assert min(bad) <= index + 1


def test_residual_beyond_truncation_not_formed():
    ex = expansion("kdv", 2, "travelling", 33)
    assert residual(model("kdv", 2), balance("kdv", 2), ex) == {}


@pytest.mark.parametrize(
    "name, eps, verdict",
    [
        ("burgers", 1, PASSES),
        ("burgers", 2, PASSES),
        ("burgers", 3, PASSES),
        ("kdv", 1, PASSES),
        ("kdv", 2, DEFECTIVE),
        ("kdv", 3, DEFECTIVE),
    ],
)
def test_verdicts(name, eps, verdict):
    *_, v = painleve_test(model(name, eps))
    assert v.classification == verdict
    assert v.passed


@pytest.mark.parametrize("name", ["burgers", "kdv"])
@pytest.mark.parametrize("eps, mu", [(1, 2), (2, 1)])
def test_mismatched_deformations_fail(name, eps, mu):
    balances, report, ex, v = painleve_test(builtin(name).with_deformation(eps=eps, mu=mu))
    assert balances == [] and ex is None
    assert v.classification == FAILS
    assert "no dominant balance" in v.justification[0]


def test_defective_counts_arbitrary_functions():
    *_, v = painleve_test(model("kdv", 2))
    assert v.free_parameters == 1 and v.order == 3


def test_failed_compatibility_classifies_fails():
    src = "pde kb {\n field u(x, t)\n param nu: real\n equation: dt(u) + u*D(u; 1) + D3(u; 1) = nu*D2(u; 1)\n}\n"
    *_, v = painleve_test(parse_system(src))
    assert v.classification == FAILS
    assert any("resonance 6" in j for j in v.justification)


def test_short_expansion_is_defective_not_passing():
    s = model("kdv", 1)
    b = dominant_balance(s)[0]
    ex = expansion("kdv", 1, "travelling", 4)
    v = classify(s, b, ex, resonance_spectrum(s, b))
    assert v.classification == DEFECTIVE
