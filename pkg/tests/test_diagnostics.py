import math
from fractions import Fraction

import mpmath
import pytest

from conftest import expansion
from ptpainleve.analysis import (
    CONVERGENT,
    INCONCLUSIVE,
    CoefficientSequence,
    bound_check,
    numerator_value,
    root_test,
    split_index,
    stirling_ratio,
)
from ptpainleve.symcore import Expr, GaussRational, parameter

BIND = {"kappa": 1, "omega": 1}


@pytest.fixture(scope="module")
def burgers_seq():
    return CoefficientSequence.from_expansion(expansion("burgers", 2, "travelling", 30, GaussRational(0)), BIND)


def test_sequence_indexing(burgers_seq):
    first = burgers_seq.entries[0]
    assert first.n == 1
    assert first.value == GaussRational(Fraction(1, 8))
    assert [e.n for e in burgers_seq.nonzero()][:3] == [1, 4, 7]


def test_geometric_sequence_converges():
    seq = CoefficientSequence.from_values({n: Fraction(1, 2**n) for n in range(1, 31)})
    rt = root_test(seq)
    assert rt.verdict == CONVERGENT
    assert abs(rt.limit - mpmath.mpf("0.5")) < mpmath.mpf("1e-20")
    assert abs(rt.radius - 2) < mpmath.mpf("1e-20")


def test_factorial_sequence_inconclusive():
    seq = CoefficientSequence.from_values({n: math.factorial(n) for n in range(1, 31)})
    rt = root_test(seq)
    assert rt.verdict == INCONCLUSIVE
    assert rt.strictly_decreasing is False


def test_too_few_entries_inconclusive():
    rt = root_test(CoefficientSequence.from_values({n: Fraction(1, 3**n) for n in range(1, 5)}))
    assert rt.verdict == INCONCLUSIVE and "fewer" in rt.note


def test_all_zero_inconclusive():
    rt = root_test(CoefficientSequence.from_values({n: 0 for n in range(1, 20)}))
    assert rt.verdict == INCONCLUSIVE and rt.values == ()


def test_burgers_root_test(burgers_seq):
    rt = root_test(burgers_seq)
    assert rt.verdict == CONVERGENT
    assert [n for n, _ in rt.values] == list(range(1, 30, 3))
    assert abs(float(rt.limit) - 0.18736) < 1e-4


def test_precision_consistency(burgers_seq):
    """300-bit and 150-bit magnitudes agree to 30 significant digits for every n <= 33."""
    kdv = CoefficientSequence.from_expansion(expansion("kdv", 2, "travelling", 34), BIND)
    for seq in (burgers_seq, kdv):
        for e in seq.entries:
            if e.n > 33 or not e.value:
                continue
            lo, hi = e.magnitude(150), e.magnitude(300)
            with mpmath.workprec(300):
                assert abs(lo - hi) <= abs(hi) * mpmath.mpf(10) ** -30


@pytest.mark.parametrize("m", range(1, 91))
def test_split_index(m):
    n, nu = split_index(m)
    assert 3 * n - nu == m and nu in (0, 1, 2) and n >= 1


def test_numerator_value():
    kappa, omega = (Expr.sym(parameter(p)) for p in ("kappa", "omega"))
    c = Expr.const(GaussRational(0, Fraction(-1509727, 11501775910625 * 2**46))) * omega**10 * kappa**-19
    assert numerator_value(c, {"kappa": 2, "omega": 3}) == GaussRational(0, -1509727 * 3**10)


def test_bound_entries_cover_orders(burgers_seq):
    rep = bound_check(burgers_seq, order=30)
    assert [e.m for e in rep.entries] == list(range(1, 29))
    for e in rep.entries:
        assert 3 * e.n - e.nu == e.m


def test_bound_regression(burgers_seq):
    """Frozen engine result: with p_m taken as the coefficient numerator the estimate fails only at m = 1."""
    rep = bound_check(burgers_seq, order=30)
    assert rep.failures == [1]
    assert rep.holds_up_to == 0
    first = rep.entries[0]
    assert abs(float(first.re_lhs) - 0.125) < 1e-12
    assert abs(float(first.re_rhs) - 1 / (32 * math.sqrt(math.pi))) < 1e-12


@pytest.mark.parametrize("n", [50, 100])
def test_stirling_within_two_percent(n):
    assert abs(stirling_ratio(n) - 1) < 0.02


def test_stirling_tends_to_one():
    assert abs(stirling_ratio(200) - 1) < abs(stirling_ratio(100) - 1) < abs(stirling_ratio(50) - 1)
