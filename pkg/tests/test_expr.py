from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ptpainleve.errors import CyclicSubstitution, UnsupportedDivision
from ptpainleve.symcore import (
    ONE_EXPR,
    PHI,
    ZERO_EXPR,
    Expr,
    GaussRational,
    SymExp,
    collect_phi_powers,
    conjugate,
    differentiate,
    differentiate_along,
    jet,
    monomial_gcd,
    normalize,
    parameter,
    substitute,
)
from ptpainleve.symcore.exponents import exp_add, exp_neg
from ptpainleve.symcore.expr import evaluate, from_powers

U = jet("u")
UX = U.derivative("x")
UT = U.derivative("t")
KAPPA = parameter("kappa")
OMEGA = parameter("omega")
SYMBOLS = [U, UX, UT, KAPPA, OMEGA, PHI]

rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))
coefs = st.builds(GaussRational, rationals, rationals)


@st.composite
def monomials(draw, negative=False):
    c = draw(coefs)
    out = Expr.const(c)
    lo = -2 if negative else 0
    for s in draw(st.lists(st.sampled_from(SYMBOLS), max_size=3)):
        out = out * Expr.sym(s, draw(st.integers(lo, 3)))
    return out


@st.composite
def exprs(draw, negative=False):
    out = ZERO_EXPR
    for m in draw(st.lists(monomials(negative), max_size=4)):
        out = out + m
    return out


@given(exprs(), exprs(), exprs())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO_EXPR == a
    assert a * ONE_EXPR == a
    assert a - a == ZERO_EXPR
    assert hash(a + b) == hash(b + a)


@given(exprs(negative=True), st.integers(0, 3), st.integers(0, 3))
def test_integer_powers(a, m, n):
    assert a ** (m + n) == a**m * a**n


@given(monomials(negative=True).filter(bool))
def test_monomial_division(m):
    assert m / m == ONE_EXPR
    assert m ** -1 * m == ONE_EXPR


def test_division_by_sum_rejected():
    with pytest.raises(UnsupportedDivision):
        Expr.sym(U) / (Expr.sym(U) + 1)


@given(exprs(True), exprs(True))
def test_leibniz(a, b):
    for v in ("x", "t"):
        assert differentiate(a * b, v) == differentiate(a, v) * b + a * differentiate(b, v)


@given(exprs(True))
def test_mixed_partials_commute(a):
    assert differentiate_along(a, ("x", "t")) == differentiate_along(a, ("t", "x"))
    assert differentiate(differentiate(a, "x"), "x") == differentiate(a, "x", 2)


@given(exprs(True), st.integers(1, 4))
def test_power_rule(a, n):
    assert differentiate(a**n, "x") == n * a ** (n - 1) * differentiate(a, "x")


def test_symbolic_exponent_derivative():
    eps = SymExp.var("eps")
    e = Expr.sym(UX, eps)
    d = differentiate(e, "x")
    assert str(d) == "eps*u_x^(eps-1)*u_xx"


@given(exprs(True))
def test_identity_substitution(a):
    assert substitute(a, {}) == a
    assert substitute(a, {s: Expr.sym(s) for s in SYMBOLS}) == a


@given(exprs(), exprs(), exprs())
def test_substitution_is_homomorphism(a, b, v):
    bind = {KAPPA: v}
    assert substitute(a * b, bind) == substitute(a, bind) * substitute(b, bind)
    assert substitute(a + b, bind) == substitute(a, bind) + substitute(b, bind)


def test_self_referencing_binding_allowed():
    assert substitute(Expr.sym(UT), {UT: -Expr.sym(UT)}) == -Expr.sym(UT)


def test_cyclic_binding_rejected():
    with pytest.raises(CyclicSubstitution):
        substitute(Expr.sym(KAPPA), {KAPPA: Expr.sym(OMEGA), OMEGA: Expr.sym(KAPPA)})


def test_induced_jets():
    e = Expr.sym(UX)
    assert substitute(e, {U: Expr.sym(KAPPA) * Expr.sym(U) ** 2}, induce_jets=True) == 2 * Expr.sym(KAPPA) * Expr.sym(
        U
    ) * Expr.sym(UX)


@given(exprs(True))
def test_phi_collection_partitions(a):
    groups = collect_phi_powers(a)
    assert from_powers(groups) == a
    for g in groups.values():
        assert PHI not in g.free_symbols()


@given(exprs(True), exprs(True))
def test_conjugation(a, b):
    assert conjugate(conjugate(a)) == a
    assert conjugate(a * b) == conjugate(a) * conjugate(b)


def test_symbolic_i_power_conjugates():
    eps = SymExp.var("eps")
    e = Expr.sym(UX, eps) * Expr.const(GaussRational(0, 1)) ** eps
    assert conjugate(e) == Expr.sym(UX, eps) * Expr.const(GaussRational(0, 1)) ** exp_neg(eps)


def test_i_power_folding():
    i = Expr.const(GaussRational(0, 1))
    eps = SymExp.var("eps")
    assert i ** exp_add(eps, 2) == -(i**eps)
    assert str(i**eps * i) == "i*i^(eps)"


def test_formatting():
    e = Expr.const(Fraction(1, 8)) * Expr.sym(KAPPA, -1) * Expr.sym(OMEGA)
    assert str(e) == "1/8*kappa^-1*omega"
    assert str(ZERO_EXPR) == "0"


def test_normalize_tree():
    tree = ("+", ("*", 2, U), ("*", -1, U), ("^", UX, 2))
    assert normalize(tree) == Expr.sym(U) + Expr.sym(UX) ** 2


@given(exprs())
def test_monomial_gcd_divides(a):
    g = monomial_gcd(a)
    if a:
        quotient = a / g
        assert quotient * g == a


@given(exprs(True))
def test_numeric_evaluation_is_homomorphic(a):
    vals = {s: complex(1 + k * 0.25, 0.5) for k, s in enumerate(SYMBOLS)}
    lhs = evaluate(a * a, vals)
    rhs = evaluate(a, vals) ** 2
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))
