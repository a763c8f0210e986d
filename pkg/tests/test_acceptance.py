"""Acceptance criteria 1 to 10; each test carries a ``criterion`` marker and the run prints one line per criterion."""

import time
from fractions import Fraction as F

import pytest

import golden as G
from ptpainleve.analysis import CoefficientSequence, bound_check, numeric_compare, root_test
from ptpainleve.analysis.diagnostics import CONVERGENT
from ptpainleve.deform import pt_transform
from ptpainleve.frontend import builtin
from ptpainleve.painleve import (
    DEFECTIVE,
    FAILS,
    PASSES,
    dominant_balance,
    expand,
    integrality_analysis,
    painleve_test,
    resonance_spectrum,
    solved_orders_vanish,
)
from ptpainleve.symcore import GaussRational

ZERO = GaussRational(0)
BIND = {"kappa": 1, "omega": 1}


def concrete(name, eps, mu=None):
    return builtin(name).with_deformation(eps=eps, mu=eps if mu is None else mu)


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


def build(name, eps, mode, order, lambda2=None):
    s = concrete(name, eps)
    (b,) = dominant_balance(s)
    ex = expand(s, b, mode, order, None if lambda2 is None else {2: lambda2})
    return s, b, ex


@pytest.mark.criterion(1)
def test_golden_balances():
    t0 = time.perf_counter()
    (bb,) = dominant_balance(builtin("burgers"))
    (kb,) = dominant_balance(builtin("kdv"))
    elapsed = time.perf_counter() - t0
    assert bb.alpha == -1 and bb.describe_constraints() == ["mu=eps"]
    assert [str(v) for v in bb.lambda0] == ["-2*i*eps*kappa*phi_x"]
    assert kb.alpha == -2 and kb.describe_constraints() == ["mu=eps"]
    assert [str(v) for v in kb.lambda0] == ["1/2*eps*phi_x^2 + 3/2*eps^2*phi_x^2"]
    assert elapsed < 1.0


@pytest.mark.criterion(2)
def test_golden_resonances():
    t0 = time.perf_counter()
    for eps in (1, 2, 3, 4):
        s = concrete("burgers", eps)
        r = resonance_spectrum(s, dominant_balance(s)[0])
        assert r.integer_roots == (-1, 2) and r.all_integer
    s = concrete("kdv", 1)
    r1 = resonance_spectrum(s, dominant_balance(s)[0])
    assert r1.integer_roots == (-1, 4, 6) and r1.all_integer
    s = concrete("kdv", 2)
    r2 = resonance_spectrum(s, dominant_balance(s)[0])
    assert r2.integer_roots == (-1,)
    assert [str(q.factor) for q in r2.quadratics] == ["42 - 16*r + r^2"]
    g = builtin("kdv")
    rec = integrality_analysis(resonance_spectrum(g, dominant_balance(g)[0]))
    assert rec.parameter == "eps" and rec.values == (1,)
    assert time.perf_counter() - t0 < 1.0


@pytest.mark.criterion(3)
def test_burgers_reduced_series_lambda2_free():
    _, _, ex = build("burgers", 2, "reduced", 5)
    assert G.mismatches(ex, G.BURGERS_EXP, (-1, 4)) == []
    assert ex.coefficient_of_power(3) == G.Ti(F(-1, 20), lambda2=2, kappa=-1)
    assert ex.coefficient_of_power(4) == G.Ti(F(-1, 96), lambda2=1, xi_t=1, kappa=-2)


@pytest.mark.criterion(4)
def test_burgers_travelling_series():
    (_, _, ex), elapsed = timed(build, "burgers", 2, "travelling", 30, ZERO)
    assert G.mismatches(ex, G.BURGERS_TRAVELLING, (-1, 29)) == []
    assert ex.coefficient_of_power(11) == G.Ti(F(19, 3185 * 2**18), omega=4, kappa=-7)
    assert ex.coefficient_of_power(29) == G.Ti(F(-1509727, 11501775910625 * 2**46), omega=10, kappa=-19)
    assert elapsed < 60


@pytest.mark.criterion(5)
def test_kdv_travelling_series():
    t0 = time.perf_counter()
    s, b, ex = build("kdv", 2, "travelling", 30)
    *_, verdict = painleve_test(s)
    elapsed = time.perf_counter() - t0
    assert G.mismatches(ex, G.KDV_TRAVELLING, (-2, 28)) == []
    assert ex.coefficient_of_power(8) == G.T(F(1, 192192), omega=2)
    assert ex.coefficient_of_power(23) == G.Ti(F(391907, 56760007181706436608), omega=5)
    assert ex.coefficient_of_power(28) == G.T(F(-38892808841, 507260097462393341102260224), omega=6)
    assert verdict.classification == DEFECTIVE
    assert elapsed < 60


@pytest.mark.criterion(6)
@pytest.mark.parametrize(
    "name, mode, order, lambda2",
    [("burgers", "reduced", 5, None), ("burgers", "travelling", 30, ZERO), ("kdv", "travelling", 30, None)],
)
def test_residual_oracle(name, mode, order, lambda2):
    s, b, ex = build(name, 2, mode, order, lambda2)
    ok, bad = solved_orders_vanish(s, b, ex)
    assert ok, bad


@pytest.mark.criterion(7)
@pytest.mark.parametrize("name", ["burgers", "kdv"])
@pytest.mark.parametrize("eps", [1, 2, 3])
def test_pt_invariance(name, eps):
    e = concrete(name, eps).equation
    assert pt_transform(e) in (e, -e)


@pytest.mark.criterion(8)
@pytest.mark.parametrize("name, eps, mu", [("burgers", 1, 2), ("kdv", 2, 1)])
def test_failure_detection(name, eps, mu):
    balances, _, ex, verdict = painleve_test(concrete(name, eps, mu))
    assert balances == [] and ex is None
    assert verdict.classification == FAILS


@pytest.mark.criterion(9)
@pytest.mark.xfail(
    strict=True,
    reason="|a_n|^(1/n) rises from n=1 to n=4 and the estimate fails at n=1 (0.125 > 1/(32 sqrt(pi)))",
)
def test_convergence_diagnostics():
    _, _, ex = build("burgers", 2, "travelling", 30, ZERO)
    seq = CoefficientSequence.from_expansion(ex, BIND)
    rt = root_test(seq)
    bound = bound_check(seq, order=30)
    assert rt.verdict == CONVERGENT
    assert rt.strictly_decreasing
    assert bound.holds and bound.failures == []


@pytest.mark.criterion(10)
def test_numeric_cross_check():
    t0 = time.perf_counter()
    for name, order, lam in (("burgers", 30, ZERO), ("kdv", 33, None)):
        s, _, ex = build(name, 2, "travelling", order, lam)
        assert float(numeric_compare(ex, s, window=(0.1, 0.5))) < 1e-6
    devs = []
    for n in (10, 20, 30):
        s, _, ex = build("burgers", 2, "travelling", n, ZERO)
        devs.append(float(numeric_compare(ex, s, window=(0.1, 0.5), rtol=1e-26)))
    assert devs[0] > devs[1] > devs[2]
    assert time.perf_counter() - t0 < 10
