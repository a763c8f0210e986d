import pytest
from hypothesis import given
from hypothesis import strategies as st

from ptpainleve.errors import AmbiguousOrdering
from ptpainleve.symcore import SymExp, compare_exponents, exp_add, exp_mul, exp_sub, exp_substitute, format_exponent

EPS = SymExp.var("eps")
MU = SymExp.var("mu")


@st.composite
def affine(draw):
    a, b, c = draw(st.integers(-4, 4)), draw(st.integers(-4, 4)), draw(st.integers(-6, 6))
    return exp_add(exp_add(exp_mul(a, EPS), exp_mul(b, MU)), c)


@given(affine(), affine(), st.integers(1, 9), st.integers(1, 9))
def test_substitution_commutes_with_arithmetic(a, b, e, m):
    env = {"eps": e, "mu": m}
    assert exp_substitute(exp_add(a, b), env) == exp_substitute(a, env) + exp_substitute(b, env)
    assert exp_substitute(exp_sub(a, b), env) == exp_substitute(a, env) - exp_substitute(b, env)
    assert exp_substitute(exp_mul(a, b), env) == exp_substitute(a, env) * exp_substitute(b, env)


def test_collapse_to_int():
    assert exp_sub(exp_add(EPS, 3), EPS) == 3
    assert isinstance(exp_sub(exp_add(EPS, 3), EPS), int)


def test_formatting():
    assert format_exponent(exp_sub(EPS, 1)) == "eps-1"
    assert format_exponent(exp_add(EPS, MU)) == "eps+mu"
    assert format_exponent(-2) == "-2"


def test_compare_concrete_and_symbolic():
    assert compare_exponents(1, 2) < 0
    assert compare_exponents(exp_add(EPS, 1), EPS) > 0
    with pytest.raises(AmbiguousOrdering):
        compare_exponents(EPS, MU)
