"""Exact symbolic core: Gaussian rationals and the expression algebra over them."""

from .exponents import SymExp, compare_exponents, exp_add, exp_mul, exp_sub, exp_substitute, format_exponent
from .expr import (
    I_EXPR,
    ONE_EXPR,
    PHI,
    ZERO_EXPR,
    Expr,
    coefficients_in,
    collect,
    collect_phi_powers,
    conjugate,
    differentiate,
    differentiate_along,
    exponent_to_expr,
    expr_to_exponent,
    format_expr,
    monomial_gcd,
    normalize,
    substitute,
)
from .gauss import I, ONE, ZERO, GaussRational, format_gauss, parse_gauss
from .symbols import (
    Symbol,
    coefficient,
    exponent_symbol,
    function_of_t,
    independent,
    jet,
    numeric_base,
    parameter,
    pretty_name,
    probe,
    symbol_from_name,
)

__all__ = [
    "Expr", "GaussRational", "SymExp", "Symbol", "I", "ONE", "ZERO", "I_EXPR", "ONE_EXPR", "ZERO_EXPR", "PHI",
    "coefficient", "coefficients_in", "collect", "collect_phi_powers", "compare_exponents", "conjugate", "differentiate",
    "differentiate_along", "exp_add", "exp_mul", "exp_sub", "exp_substitute", "exponent_symbol",
    "exponent_to_expr", "expr_to_exponent", "format_exponent", "format_expr", "format_gauss", "function_of_t",
    "independent", "jet", "monomial_gcd", "normalize", "numeric_base", "parameter", "parse_gauss",
    "pretty_name", "probe", "substitute", "symbol_from_name",
]
