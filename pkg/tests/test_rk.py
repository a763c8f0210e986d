import math

import gmpy2
import pytest

from ptpainleve.analysis.rk import (
    FEHLBERG78,
    IntegrationError,
    integrate,
    order_condition_defects,
    rooted_trees,
    row_sum_defects,
    tree_density,
)

# number of rooted trees with n vertices (OEIS A000081)
TREE_COUNTS = [1, 1, 2, 4, 9, 20, 48, 115]


def test_tree_enumeration():
    assert [len(rooted_trees(n)) for n in range(1, 9)] == TREE_COUNTS


def test_tree_density_examples():
    assert tree_density(()) == 1
    assert tree_density(((),)) == 2
    assert tree_density(((), ())) == 3
    assert tree_density((((),),)) == 6


def test_row_sums():
    assert row_sum_defects(FEHLBERG78) == []


def test_propagated_weights_have_order_eight():
    assert order_condition_defects(FEHLBERG78, FEHLBERG78.b, 8) == []


def test_embedded_weights_have_order_seven_exactly():
    assert order_condition_defects(FEHLBERG78, FEHLBERG78.b_hat, 7) == []
    assert order_condition_defects(FEHLBERG78, FEHLBERG78.b_hat, 8) != []


def _one_step_error(h):
    with gmpy2.context(gmpy2.get_context(), precision=200):
        sol = integrate(lambda z, y: [y[0]], 0, [gmpy2.mpc(1)], h, rtol=1e30, h0=h, prec=200)
        z, y = sol.points[-1]
        return abs(y[0] - gmpy2.exp(gmpy2.mpfr(h)))


def test_empirical_local_order():
    """Local error of one step scales as h**9 for an order-8 method."""
    e1, e2 = _one_step_error(0.2), _one_step_error(0.1)
    slope = math.log2(float(e1 / e2))
    assert 8.6 < slope < 9.4


def test_complex_oscillator_accuracy():
    sol = integrate(lambda z, y: [1j * y[0]], 0, [gmpy2.mpc(1)], 3, rtol=1e-25, prec=150)
    z, y = sol.points[-1]
    with gmpy2.context(gmpy2.get_context(), precision=150):
        exact = gmpy2.exp(gmpy2.mpc(0, 3))
        assert abs(y[0] - exact) < 1e-22
    assert z == 3 and sol.steps > 0


def test_backward_integration():
    with gmpy2.context(gmpy2.get_context(), precision=120):
        e = gmpy2.mpc(gmpy2.exp(gmpy2.mpfr(1)))
    sol = integrate(lambda z, y: [y[0]], 1, [e], 0, rtol=1e-20, prec=120)
    z, y = sol.points[-1]
    assert z == 0 and abs(y[0] - 1) < 1e-17


def test_blow_up_reports_reached_point():
    with pytest.raises(IntegrationError) as info:
        integrate(lambda z, y: [y[0] ** 2], 0, [gmpy2.mpc(1)], 2, rtol=1e-12, prec=80, max_steps=5000)
    reached = float(info.value.reached)
    assert 0.9 < reached < 1.001
    assert "reached z=" in str(info.value)


def test_singular_rhs_reported():
    with pytest.raises(IntegrationError, match="non-finite"):
        integrate(lambda z, y: [1 / (y[0] - 1)], 0, [gmpy2.mpc(1)], 1, prec=60)
