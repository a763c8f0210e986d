"""Dominant balance: leading exponent, parameter constraints and leading coefficient."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import AmbiguousOrdering, UnsupportedExponentForm
from ..symcore.exponents import SymExp, compare_exponents, exp_add, exp_mul, exp_sub, exp_substitute, format_exponent
from ..symcore.expr import (
    ONE_EXPR,
    PHI,
    ZERO_EXPR,
    Expr,
    coefficients_in,
    collect_phi_powers,
    exponent_to_expr,
    monomial_gcd,
    substitute,
)
from ..symcore.symbols import JET, coefficient, exponent_symbol, jet

ALPHA = "alpha"
LAMBDA0 = coefficient(0)
SEARCH_BOX = 64  # parameter range for the brute-force fallback


@dataclass(frozen=True)
class BalanceResult:
    """One admitted dominant balance."""

    alpha: int
    constraints: tuple[tuple[str, object], ...]
    lambda0: tuple[Expr, ...]
    terms: tuple[int, ...]
    leading_exponent: object
    method: str = field(default="divisor", compare=False)

    @property
    def constraint_map(self) -> dict[str, object]:
        return dict(self.constraints)

    def describe_constraints(self) -> list[str]:
        return [f"{k}={format_exponent(v)}" for k, v in self.constraints]


@dataclass(frozen=True)
class Candidate:
    """A pairwise balance considered during the search, admitted or not."""

    classes: tuple[object, object]
    alpha: object
    constraints: tuple[tuple[str, object], ...]
    admitted: bool
    reason: str


def field_jets(e: Expr, field_name: str = "u"):
    return sorted({s for s in e.free_symbols() if s.kind == JET and s.base == field_name}, key=lambda s: s.name)


def term_exponent(mono, field_name: str = "u"):
    """phi-exponent of a term after ``u -> lambda0 phi**alpha``, as a function of alpha."""
    total = 0
    a = SymExp.var(ALPHA)
    for s, p in mono:
        if s.kind == JET and s.base == field_name:
            total = exp_add(total, exp_mul(exp_sub(a, s.order), p))
    return total


def exponent_classes(e: Expr, field_name: str = "u") -> list[tuple[object, tuple[int, ...]]]:
    """Distinct leading phi-exponents (functions of alpha) with the canonical term indices sharing each."""
    classes: dict = {}
    for idx, (mono, _) in enumerate(e.items()):
        k = term_exponent(mono, field_name)
        classes.setdefault(k, []).append(idx)
    return [(k, tuple(v)) for k, v in classes.items()]


def _linear_split(expo, var: str):
    if isinstance(expo, SymExp):
        return expo.coefficient(var), expo.without(var)
    return 0, expo


def _affine_parts(e) -> tuple[dict[str, Fraction], Fraction]:
    if not isinstance(e, SymExp):
        return {}, Fraction(e)
    lin = {}
    const = Fraction(0)
    for mono, c in e.terms.items():
        c = Fraction(int(c.numerator), int(c.denominator))
        if len(mono) == 0:
            const = c
        elif len(mono) == 1:
            lin[mono[0]] = c
        else:
            raise UnsupportedExponentForm(f"non-affine exponent coefficient {e}")
    return lin, const


def _divisors(k: int) -> list[int]:
    k = abs(k)
    small = [d for d in range(1, math.isqrt(k) + 1) if k % d == 0]
    ds = sorted(set(small + [k // d for d in small]))
    return ds + [-d for d in ds]


def _realizable(coeffs: dict[str, int], s: int) -> bool:
    g = math.gcd(*coeffs.values())
    if s % g:
        return False
    vals = list(coeffs.values())
    if all(v > 0 for v in vals):
        return s >= sum(vals)
    if all(v < 0 for v in vals):
        return s <= sum(vals)
    return True


def _binding_for(coeffs: dict[str, int], s: int) -> tuple[tuple[str, object], ...] | None:
    """Solve ``sum c_p p = s`` for one variable with unit coefficient."""
    names = sorted(coeffs)
    for p in reversed(names):
        c = coeffs[p]
        if abs(c) != 1:
            continue
        rest = SymExp({(q,): -coeffs[q] for q in names if q != p})
        value = exp_mul(exp_add(rest, s), c)
        if not isinstance(value, SymExp) and value < 1:
            return None
        return ((p, value),)
    return None


def _solve_pair(e1, e2):
    """Admissible (alpha, constraints, method) for ``e1 == e2``; alpha a negative integer."""
    diff = exp_sub(e1, e2)
    A, B = _linear_split(diff, ALPHA)
    (la, a0), (lb, b0) = _affine_parts(A), _affine_parts(B)
    params = sorted(set(la) | set(lb))
    if not params:
        if a0 == 0:
            return []
        alpha = -b0 / a0
        if alpha.denominator == 1 and alpha < 0:
            return [(int(alpha), (), "direct")]
        return []
    base = la or lb
    ref = {p: base.get(p, Fraction(0)) for p in params}
    scale = 1
    for v in ref.values():
        scale = scale * v.denominator // math.gcd(scale, v.denominator)
    ints = {p: int(v * scale) for p, v in ref.items()}
    g = math.gcd(*ints.values())
    first = next(v for v in ints.values() if v)
    g = g if first > 0 else -g
    coeffs = {p: v // g for p, v in ints.items() if v}
    unit = Fraction(scale, 1) / g  # s = sum(coeffs p) equals unit * (ref form)

    def along(lin):
        ratio = None
        for p in params:
            c = lin.get(p, Fraction(0))
            r = c / ref[p] if ref[p] else (None if c else 0)
            if r is None:
                return None
            if ref[p]:
                if ratio is None:
                    ratio = r
                elif ratio != r:
                    return None
        return (ratio or Fraction(0)) / unit

    a1, b1 = along(la), along(lb)
    if a1 is None or b1 is None or any(x.denominator != 1 for x in (a1, b1, a0, b0)):
        return _brute_force(e1, e2, params)
    a1, b1, a0, b0 = int(a1), int(b1), int(a0), int(b0)
    out = []
    if a1 == 0:
        return _brute_force(e1, e2, params)
    K = b1 * a0 - a1 * b0
    if K == 0:
        if b1 % a1 == 0 and -b1 // a1 < 0:
            return [(-b1 // a1, (), "divisor")]
        return []
    for D in _divisors(K):
        if (b1 - D) % a1:
            continue
        n = (b1 - D) // a1
        if n < 1:
            continue
        num = K // D - a0
        if num % a1:
            continue
        s = num // a1
        if not _realizable(coeffs, s):
            continue
        bind = _binding_for(coeffs, s)
        if bind is None:
            return _brute_force(e1, e2, params)
        out.append((-n, bind, "divisor"))
    return out


def _brute_force(e1, e2, params):
    """Bounded enumeration of integer parameter values in ``1..SEARCH_BOX``."""
    found: dict = {}
    for values in itertools.product(range(1, SEARCH_BOX + 1), repeat=len(params)):
        env = dict(zip(params, values))
        d = exp_substitute(exp_sub(e1, e2), env)
        A, B = _linear_split(d, ALPHA)
        if A == 0:
            continue
        alpha = Fraction(-B) / Fraction(A)
        if alpha.denominator == 1 and alpha < 0:
            found.setdefault(int(alpha), []).append(env)
    out = []
    for alpha, envs in sorted(found.items()):
        for env in envs:
            out.append((alpha, tuple(sorted(env.items())), "search"))
    return out


def _falling(a: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= a - j
    return out


def leading_substitution(e: Expr, alpha: int, field_name: str = "u", lam: Expr | None = None, phi=PHI) -> Expr:
    """Replace every jet ``u_{x^a t^b}`` by the leading term of ``lam * phi**alpha``."""
    lam = Expr.sym(LAMBDA0) if lam is None else lam
    bind = {}
    for s in field_jets(e, field_name):
        a, b = s.count("x"), s.count("t")
        val = lam * _falling(alpha, a + b) * Expr.sym(phi, alpha - a - b)
        if a:
            val = val * Expr.sym(phi.derivative("x"), a)
        if b:
            val = val * Expr.sym(phi.derivative("t"), b)
        bind[s] = val
    return substitute(e, bind)


def apply_constraints(e: Expr, constraints) -> Expr:
    if not constraints:
        return e
    return substitute(e, {exponent_symbol(k): exponent_to_expr(v) for k, v in constraints})


def minimal_key(keys):
    """Smallest exponent among ``keys``; raises AmbiguousOrdering if not decidable."""
    keys = list(keys)
    best = keys[0]
    for k in keys[1:]:
        if compare_exponents(k, best) < 0:
            best = k
    for k in keys:
        if k != best and compare_exponents(k, best) <= 0:
            raise AmbiguousOrdering(f"no unique minimal exponent among {[format_exponent(x) for x in keys]}")
    return best


def solve_lambda0(e: Expr, alpha: int, field_name: str = "u") -> tuple[list[Expr], object]:
    """Nonzero roots of the leading-order equation and its phi-exponent."""
    sub = leading_substitution(e, alpha, field_name)
    groups = collect_phi_powers(sub)
    groups = {k: v for k, v in groups.items() if v}
    lead = minimal_key(groups)
    g = groups[lead]
    g = g / monomial_gcd(g)
    poly = coefficients_in(g, LAMBDA0)
    if set(poly) == {0}:
        return [], lead
    if set(poly) <= {0, 1} and poly.get(1) and poly[1].is_monomial():
        return [-poly.get(0, ZERO_EXPR) / poly[1]], lead
    return [], lead


def balance_candidates(e: Expr, field_name: str = "u") -> tuple[list[BalanceResult], list[Candidate]]:
    classes = exponent_classes(e, field_name)
    admitted: list[BalanceResult] = []
    log: list[Candidate] = []
    seen = set()
    for (k1, t1), (k2, t2) in itertools.combinations(classes, 2):
        for alpha, constraints, method in _solve_pair(k1, k2):
            env = dict(constraints)
            env[ALPHA] = alpha
            at = [(exp_substitute(k, env), t) for k, t in classes]
            target = exp_substitute(k1, env)
            try:
                dominant = all(compare_exponents(k, target) >= 0 for k, _ in at)
            except AmbiguousOrdering:
                log.append(Candidate((k1, k2), alpha, constraints, False, "ambiguous ordering"))
                continue
            if not dominant:
                log.append(Candidate((k1, k2), alpha, constraints, False, "not the most singular terms"))
                continue
            terms = tuple(sorted(i for k, t in at if compare_exponents(k, target) == 0 for i in t))
            key = (alpha, constraints)
            if key in seen:
                continue
            seen.add(key)
            eq = apply_constraints(e, constraints)
            lams, _ = solve_lambda0(eq, alpha, field_name)
            if not lams:
                log.append(Candidate((k1, k2), alpha, constraints, False, "leading-order equation has no nonzero root"))
                continue
            log.append(Candidate((k1, k2), alpha, constraints, True, "admitted"))
            admitted.append(BalanceResult(alpha, constraints, tuple(lams), terms, target, method))
    admitted.sort(key=lambda b: (b.alpha, str(b.constraints)))
    return admitted, log


def dominant_balance(system) -> list[BalanceResult]:
    """All admitted balances of a :class:`PDESystem` (empty list when none exist)."""
    return balance_candidates(system.equation, system.field)[0]


def constrained_system(system, balance: BalanceResult):
    """System with concrete constraint values bound; symbolic constraints stay in ``equation_for``."""
    concrete = {k: v for k, v in balance.constraints if isinstance(v, int)}
    return system.with_deformation(**concrete) if concrete else system


def equation_for(system, balance: BalanceResult) -> Expr:
    return apply_constraints(system.equation, balance.constraints)
