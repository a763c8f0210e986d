import dataclasses
from fractions import Fraction

import pytest
from conftest import expansion, model

from ptpainleve.analysis import numeric_compare
from ptpainleve.symcore import Expr


@pytest.mark.parametrize("name,order,lambda2", [("burgers", 30, 0), ("kdv", 33, None)])
def test_series_matches_integration(name, order, lambda2):
    r = numeric_compare(expansion(name, 2, "travelling", order, lambda2), model(name, 2))
    assert float(r) < 1e-6
    assert r.steps > 0 and r.order == order


def test_deviation_shrinks_with_order():
    devs = [
        float(numeric_compare(expansion("burgers", 2, "travelling", n, 0), model("burgers", 2), rtol=1e-26))
        for n in (10, 20, 30)
    ]
    assert devs[0] > devs[1] > devs[2]


def test_corrupted_coefficient_is_detected():
    good = expansion("burgers", 2, "travelling", 30, 0)
    coeffs = list(good.coefficients)
    coeffs[5] = coeffs[5] + Expr.const(Fraction(1, 100))
    bad = dataclasses.replace(good, coefficients=tuple(coeffs))
    assert float(numeric_compare(bad, model("burgers", 2))) > 1e-6


def test_other_resonance_branch_also_matches():
    r = numeric_compare(expansion("burgers", 2, "travelling", 30, 1), model("burgers", 2))
    assert float(r) < 1e-6


def test_empty_window():
    r = numeric_compare(expansion("burgers", 2, "travelling", 10, 0), model("burgers", 2), window=(0.3, 0.3))
    assert float(r) == 0 and r.note == "empty window"


def test_invalid_start():
    with pytest.raises(ValueError, match="start"):
        numeric_compare(expansion("burgers", 2, "travelling", 10, 0), model("burgers", 2), start="middle")
