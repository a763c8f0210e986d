import itertools
from fractions import Fraction

import pytest

from ptpainleve.frontend import builtin, parse_system
from ptpainleve.painleve import balance as B
from ptpainleve.painleve import dominant_balance, leading_substitution
from ptpainleve.symcore import Expr, GaussRational, PHI, SymExp, exp_add, exp_mul, exp_sub, exp_substitute, parameter

ALPHA = SymExp.var(B.ALPHA)
EPS, MU = SymExp.var("eps"), SymExp.var("mu")
I = GaussRational(0, 1)


def test_burgers_generic():
    (b,) = dominant_balance(builtin("burgers"))
    assert b.alpha == -1
    assert b.describe_constraints() == ["mu=eps"]
    assert [str(v) for v in b.lambda0] == ["-2*i*eps*kappa*phi_x"]


def test_kdv_generic():
    (b,) = dominant_balance(builtin("kdv"))
    assert b.alpha == -2
    assert b.describe_constraints() == ["mu=eps"]
    assert [str(v) for v in b.lambda0] == ["1/2*eps*phi_x^2 + 3/2*eps^2*phi_x^2"]


@pytest.mark.parametrize("eps", [1, 2, 3, 4])
def test_burgers_concrete(eps):
    (b,) = dominant_balance(builtin("burgers").with_deformation(eps=eps, mu=eps))
    kappa = Expr.sym(parameter("kappa"))
    phi_x = Expr.sym(PHI.derivative("x"))
    assert b.alpha == -1 and b.constraints == ()
    assert b.lambda0 == (Expr.const(-2 * eps * I) * kappa * phi_x,)


@pytest.mark.parametrize("eps", [1, 2, 3])
def test_kdv_concrete(eps):
    (b,) = dominant_balance(builtin("kdv").with_deformation(eps=eps, mu=eps))
    phi_x = Expr.sym(PHI.derivative("x"))
    assert b.alpha == -2
    assert b.lambda0 == (Expr.const(Fraction(eps * (3 * eps + 1), 2)) * phi_x**2,)


@pytest.mark.parametrize("name, eps, mu", [("burgers", 1, 2), ("burgers", 2, 1), ("kdv", 2, 1), ("kdv", 1, 2)])
def test_mismatched_exponents_have_no_balance(name, eps, mu):
    assert dominant_balance(builtin(name).with_deformation(eps=eps, mu=mu)) == []


def test_mu_fixed_eps_generic():
    (b,) = dominant_balance(builtin("burgers").with_deformation(mu=3))
    assert b.alpha == -1 and b.constraint_map == {"eps": 3}


def test_leading_substitution_balances():
    s = builtin("burgers").with_deformation(eps=2, mu=2)
    (b,) = dominant_balance(s)
    lead = leading_substitution(s.equation, b.alpha, "u", b.lambda0[0])
    from ptpainleve.symcore import collect_phi_powers

    groups = collect_phi_powers(lead)
    assert groups[min(groups)] == Expr.const(0) or min(groups) > b.leading_exponent


def test_ordinary_kdv_burgers_balance():
    src = "pde kb {\n field u(x, t)\n param nu: real\n equation: dt(u) + u*D(u; 1) + D3(u; 1) = nu*D2(u; 1)\n}\n"
    (b,) = dominant_balance(parse_system(src))
    assert b.alpha == -2
    assert str(b.lambda0[0]) == "-12*phi_x^2"


def _term(a, b, c, d):
    """Exponent of a term with ``a`` factors of u and ``d`` plain derivatives plus the deformed slots."""
    am1 = exp_sub(ALPHA, 1)
    return exp_add(exp_add(exp_add(exp_mul(a, ALPHA), exp_mul(b, exp_mul(EPS, am1))), exp_mul(c, exp_mul(MU, am1))), d)


def _covers(bind, env):
    return all(exp_substitute(v, env) == env[k] for k, v in bind)


TERMS = list(itertools.product(range(3), range(3), range(2), range(-3, 1)))


def test_divisor_route_agrees_with_search(small_box):
    """Exhaustive over a grid of term shapes: both solvers give the same (alpha, exponents) in the box."""
    nonempty = 0
    for t1, t2 in itertools.combinations(TERMS, 2):
        e1, e2 = _term(*t1), _term(*t2)
        params = [p for p, used in (("eps", t1[1] or t2[1]), ("mu", t1[2] or t2[2])) if used]
        solved = B._solve_pair(e1, e2)
        if not params:
            assert all(bind == () for _, bind, _ in solved)
            continue
        searched = {(a, env) for a, env, _ in B._brute_force(e1, e2, params)}
        from_solver = set()
        for values in itertools.product(range(1, B.SEARCH_BOX + 1), repeat=len(params)):
            env = dict(zip(params, values))
            for a, bind, _ in solved:
                if _covers(bind, env):
                    from_solver.add((a, tuple(sorted(env.items()))))
        assert from_solver == searched, (t1, t2)
        nonempty += bool(searched)
    assert nonempty > 100


@pytest.fixture(scope="module")
def small_box():
    old = B.SEARCH_BOX
    B.SEARCH_BOX = 8
    yield
    B.SEARCH_BOX = old
