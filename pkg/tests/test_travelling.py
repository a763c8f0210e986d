import pytest

from ptpainleve.analysis import V, reduce_equation, reduce_travelling, solve_for_top, zeta_jet
from ptpainleve.errors import UnsupportedExponentForm
from ptpainleve.frontend import builtin
from ptpainleve.symcore import Expr, differentiate, substitute
from ptpainleve.symcore.symbols import exponent_symbol


def test_burgers_eps_two():
    t = reduce_travelling(builtin("burgers").with_deformation(eps=2, mu=2))
    assert str(t.ode) == "2*kappa*zeta_z*zeta_zz - v*zeta_z + i*zeta*zeta_z^2"
    assert t.order == 2


def test_burgers_eps_one():
    t = reduce_travelling(builtin("burgers").with_deformation(eps=1, mu=1))
    assert str(t.ode) == "-i*kappa*zeta_zz - v*zeta_z + zeta*zeta_z"


def test_kdv_eps_two():
    t = reduce_travelling(builtin("kdv").with_deformation(eps=2, mu=2))
    assert str(t.ode) == "-v*zeta_z - 6*i*zeta*zeta_z^2 + 2*i*zeta_z*zeta_zzz + 2*i*zeta_zz^2"
    assert t.integrated is None


def test_burgers_first_integral():
    t = reduce_travelling(builtin("burgers").with_deformation(eps=2, mu=2))
    assert str(t.integrated) == "2*kappa*zeta_z - v*z + 1/2*i*zeta^2"
    assert str(t.integrating_factor) == "zeta_z"
    assert t.integrating_factor * differentiate(t.integrated, "z") == t.ode


def test_reduction_commutes_with_deformation():
    eq = substitute(builtin("burgers").equation, {exponent_symbol("mu"): Expr.sym(exponent_symbol("eps"))})
    generic = reduce_equation(eq)
    for eps in (1, 2, 3):
        concrete = reduce_travelling(builtin("burgers").with_deformation(eps=eps, mu=eps)).ode
        assert substitute(generic, {exponent_symbol("eps"): Expr.const(eps)}) == concrete


def test_solve_for_top_splits_linearly():
    t = reduce_travelling(builtin("kdv").with_deformation(eps=2, mu=2))
    top, A, B = solve_for_top(t.ode)
    assert top == zeta_jet(3)
    assert A * Expr.sym(top) + B == t.ode


def test_nonlinear_top_rejected():
    with pytest.raises(UnsupportedExponentForm):
        solve_for_top(Expr.sym(zeta_jet(2)) ** 2 + Expr.sym(zeta_jet(1)))


def test_symbolic_exponent_rejected():
    with pytest.raises(UnsupportedExponentForm):
        reduce_travelling(builtin("burgers"))


def test_custom_speed():
    t = reduce_travelling(builtin("burgers").with_deformation(eps=1, mu=1), v=Expr.const(3))
    assert str(t.ode) == "-i*kappa*zeta_zz + zeta*zeta_z - 3*zeta_z"
    assert V.name == "v"
