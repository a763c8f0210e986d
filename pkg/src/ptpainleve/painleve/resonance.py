"""Resonance spectrum from the linearized probe substitution, and integrality of resonances."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..errors import InternalInvariantViolation
from ..symcore.exponents import SymExp, compare_exponents, exp_add, exp_sub
from ..symcore.expr import ONE_EXPR, PHI, ZERO_EXPR, Expr, collect_phi_powers, monomial_gcd, substitute
from ..symcore.gauss import ZERO, GaussRational
from ..symcore.symbols import EXPONENT, JET, exponent_symbol, probe
from . import polynomials as P
from .balance import LAMBDA0, BalanceResult, _falling, apply_constraints, field_jets, minimal_key

R = exponent_symbol("r")
THETA = probe("theta")
SEARCH_LIMIT = 10_000  # epsilon range for the fallback integrality search


@dataclass(frozen=True)
class QuadraticFactor:
    """Monic ``r**2 + b r + c``; roots ``center +- sqrt(disc)`` with ``disc = center**2 - c``."""

    b: Expr
    c: Expr
    center: Expr
    disc: Expr

    def describe(self) -> str:
        return f"r = {self.center} ± sqrt({self.disc})"

    @property
    def factor(self) -> Expr:
        r = Expr.sym(R)
        return r * r + self.b * r + self.c


@dataclass(frozen=True)
class ResonanceReport:
    polynomial: Expr
    constant_factor: Expr
    parametric_factor: Expr
    integer_roots: tuple[int, ...]
    rational_roots: tuple[Fraction, ...]
    quadratics: tuple[QuadraticFactor, ...]
    residual_factor: Expr
    parameters: tuple[str, ...] = ()

    @property
    def universal(self) -> bool:
        return -1 in self.integer_roots

    @property
    def degree(self) -> int:
        return _r_degree(self.polynomial)

    @property
    def positive_integer_roots(self) -> tuple[int, ...]:
        return tuple(sorted({r for r in self.integer_roots if r > 0}))

    @property
    def all_integer(self) -> bool:
        return not self.quadratics and not self.rational_roots and self.residual_factor == ONE_EXPR


def _r_degree(e: Expr) -> int:
    return max((dict(m).get(R, 0) for m, _ in e.raw_items()), default=0)


def linearized_part(eq: Expr, alpha: int, field_name: str = "u") -> Expr:
    """Terms linear in theta after ``u -> lambda0 phi**alpha + theta phi**(r+alpha)``, at leading order of each term."""
    lam = Expr.sym(LAMBDA0)
    phi = PHI
    phix, phit = Expr.sym(phi.derivative("x")), Expr.sym(phi.derivative("t"))
    lead: dict = {}
    probe_val: dict = {}
    ra = SymExp({("r",): 1, (): alpha})
    for s in field_jets(eq, field_name):
        a, b = s.count("x"), s.count("t")
        geom = phix ** a * phit ** b if (a or b) else ONE_EXPR
        lead[s] = lam * _falling(alpha, a + b) * Expr.sym(phi, alpha - a - b) * geom
        ff = ONE_EXPR
        r_expr = Expr.sym(R) + alpha
        for j in range(a + b):
            ff = ff * (r_expr - j)
        probe_val[s] = Expr.sym(THETA) * ff * Expr.sym(phi, exp_sub(ra, a + b)) * geom
    out = ZERO_EXPR
    for mono, coef in eq.raw_items():
        jets = [(s, p) for s, p in mono if s.kind == JET and s.base == field_name]
        others = [(s, p) for s, p in mono if not (s.kind == JET and s.base == field_name)]
        base = Expr.monomial(coef, others)
        for i, (s, p) in enumerate(jets):
            term = base * _exp_factor(p) * lead[s] ** exp_sub(p, 1) * probe_val[s]
            for j, (s2, p2) in enumerate(jets):
                if j != i:
                    term = term * lead[s2] ** p2
            out = out + term
    return out


def _exp_factor(p) -> Expr:
    from ..symcore.expr import exponent_to_expr

    return exponent_to_expr(p)


def _to_bivariate(e: Expr, eps_names: tuple[str, ...]) -> dict[tuple[int, ...], GaussRational]:
    """Polynomial in r and exponent parameters as {(deg_r, deg_p1, ...): coefficient}."""
    out = {}
    names = ("r",) + eps_names
    for mono, c in e.raw_items():
        degs = [0] * len(names)
        for s, p in mono:
            if s.kind != EXPONENT or s.name not in names or not isinstance(p, int) or p < 0:
                raise InternalInvariantViolation(f"resonance polynomial contains unexpected factor {s.name}^{p}: {e}")
            degs[names.index(s.name)] = p
        out[tuple(degs)] = c
    return out


def resonance_polynomial(eq: Expr, balance: BalanceResult, field_name: str = "u") -> Expr:
    """Monic-in-r polynomial multiplying theta at leading order."""
    eq = apply_constraints(eq, balance.constraints)
    lin = linearized_part(eq, balance.alpha, field_name)
    groups = {k: v for k, v in collect_phi_powers(lin).items() if v}
    key = minimal_key(groups)
    g = groups[key]
    g = g / monomial_gcd(g)
    g = substitute(g, {LAMBDA0: balance.lambda0[0]})
    g = g / monomial_gcd(g)
    return g


def _poly_in_r(coeffs: dict, k: int, nparams: int) -> list:
    """Coefficient polynomial in r of the parameter monomial with degree tuple index ``k``."""
    deg = max((d[0] for d in coeffs), default=0)
    out = [ZERO] * (deg + 1)
    for d, c in coeffs.items():
        if d[1:] == k:
            out[d[0]] = c
    return P.trim(out)


def _expr_from(coeffs: dict, names: tuple[str, ...]) -> Expr:
    e = ZERO_EXPR
    for d, c in coeffs.items():
        t = Expr.const(c)
        for name, k in zip(("r",) + names, d):
            t = t * Expr.sym(exponent_symbol(name), k)
        e = e + t
    return e


def _param_poly_coeffs(coeffs: dict, names) -> dict[int, dict]:
    """Group by r-degree: {deg_r: {param-degree tuple: coefficient}}."""
    out: dict = {}
    for d, c in coeffs.items():
        out.setdefault(d[0], {})[d[1:]] = c
    return out


def resonance_spectrum(eq_or_system, balance: BalanceResult, field_name: str = "u") -> ResonanceReport:
    eq = getattr(eq_or_system, "equation", eq_or_system)
    field_name = getattr(eq_or_system, "field", field_name)
    g = resonance_polynomial(eq, balance, field_name)
    names = tuple(sorted({s.name for s in g.free_symbols() if s.kind == EXPONENT and s.name != "r"}))
    coeffs = _to_bivariate(g, names)
    if not coeffs:
        raise InternalInvariantViolation("resonance polynomial vanishes identically")
    param_keys = sorted({d[1:] for d in coeffs})
    pieces = [_poly_in_r(coeffs, k, len(names)) for k in param_keys]
    common: list = []
    for p in pieces:
        common = P.gcd(common, p) if common else P.monic(p)
    # divide the parametric part by the common factor and normalise
    quotient: dict = {}
    for k, p in zip(param_keys, pieces):
        q, rem = P.divmod_poly(p, common)
        if rem:
            raise InternalInvariantViolation("common resonance factor does not divide")
        for i, c in enumerate(q):
            if c:
                quotient[(i,) + k] = c
    qdeg = max(d[0] for d in quotient)
    lead_terms = {d: c for d, c in quotient.items() if d[0] == qdeg}
    if len(lead_terms) != 1:
        lead_terms = _content_divide(quotient, names)
        quotient = lead_terms
        qdeg = max(d[0] for d in quotient)
        lead_terms = {d: c for d, c in quotient.items() if d[0] == qdeg}
    (ld, lc), = lead_terms.items()
    if any(ld[1:]):
        raise InternalInvariantViolation("resonance polynomial leading coefficient depends on parameters")
    quotient = {d: c / lc for d, c in quotient.items()}
    const_expr = _expr_from({(i,) + (0,) * len(names): c for i, c in enumerate(common) if c}, names)
    param_expr = _expr_from(quotient, names)
    full = const_expr * param_expr

    roots, rest = P.rational_roots(common)
    int_roots = tuple(int(r) for r in roots if r.denominator == 1)
    rat_roots = tuple(r for r in roots if r.denominator != 1)
    quads = []
    residual = ONE_EXPR
    if P.degree(rest) == 2:
        quads.append(_quadratic_from({(i,) + (0,) * len(names): c for i, c in enumerate(rest) if c}, names))
    elif P.degree(rest) > 0:
        residual = residual * _expr_from({(i,) + (0,) * len(names): c for i, c in enumerate(rest) if c}, names)
    if qdeg == 2:
        quads.append(_quadratic_from(quotient, names))
    elif qdeg == 1:
        residual = residual * param_expr
    elif qdeg > 2:
        residual = residual * param_expr
    return ResonanceReport(full, const_expr, param_expr, int_roots, rat_roots, tuple(quads), residual, names)


def _content_divide(quotient: dict, names) -> dict:
    """Divide out the common univariate content in a single parameter."""
    if len(names) != 1:
        raise InternalInvariantViolation("cannot normalise a multi-parameter resonance polynomial")
    by_r: dict = {}
    for d, c in quotient.items():
        by_r.setdefault(d[0], {})[d[1]] = c
    polys = {}
    for k, m in by_r.items():
        deg = max(m)
        polys[k] = P.trim([m.get(i, ZERO) for i in range(deg + 1)])
    content: list = []
    for p in polys.values():
        content = P.gcd(content, p) if content else P.monic(p)
    out = {}
    for k, p in polys.items():
        q, rem = P.divmod_poly(p, content)
        if rem:
            raise InternalInvariantViolation("content division failed")
        for i, c in enumerate(q):
            if c:
                out[(k, i)] = c
    return out


def _quadratic_from(coeffs: dict, names) -> QuadraticFactor:
    b = _expr_from({(0,) + d[1:]: c for d, c in coeffs.items() if d[0] == 1}, names)
    c = _expr_from({(0,) + d[1:]: c for d, c in coeffs.items() if d[0] == 0}, names)
    center = b * Fraction(-1, 2)
    disc = center * center - c
    return QuadraticFactor(b, c, center, disc)


# ---------------------------------------------------------------------------
# integrality


@dataclass(frozen=True)
class IntegralityRecord:
    """Integer parameter values for which every resonance is an integer."""

    parameter: Optional[str]
    values: Optional[tuple[int, ...]]  # None means every value
    method: str
    discriminant: Optional[Expr] = None
    witnesses: tuple[tuple[int, int, int], ...] = ()  # (value, m, n) with m**2 - n**2 = K
    difference: Optional[Fraction] = None  # K in m**2 - n**2 = K
    note: str = ""


def _univariate(e: Expr, name: str) -> list[Fraction] | None:
    out: dict[int, Fraction] = {}
    for mono, c in e.raw_items():
        if c.im:
            return None
        k = 0
        for s, p in mono:
            if s.name != name or not isinstance(p, int):
                return None
            k = p
        out[k] = c.as_fraction()
    deg = max(out, default=0)
    return [out.get(i, Fraction(0)) for i in range(deg + 1)]


def _roots_integer_at(report: ResonanceReport, name: str, value: int) -> bool:
    for q in report.quadratics:
        env = {exponent_symbol(name): value} if name else {}
        center = substitute(q.center, env)
        disc = substitute(q.disc, env)
        if not center.is_constant() or not disc.is_constant():
            return False
        cv, dv = center.constant_value(), disc.constant_value()
        if cv.im or dv.im:
            return False
        cf, df = cv.as_fraction(), dv.as_fraction()
        if df < 0 or df.denominator != 1 or not P.is_square(int(df)):
            return False
        root = math.isqrt(int(df))
        if (cf + root).denominator != 1 or (cf - root).denominator != 1:
            return False
    return not report.rational_roots and report.residual_factor == ONE_EXPR


def integrality_analysis(report: ResonanceReport) -> IntegralityRecord:
    if not report.parameters:
        ok = _roots_integer_at(report, "", 0)
        return IntegralityRecord(None, None if ok else (), "constant", note="resonances do not depend on parameters")
    if len(report.parameters) > 1:
        return IntegralityRecord(None, (), "unsupported", note="more than one free exponent parameter")
    name = report.parameters[0]
    param_quads = [q for q in report.quadratics if name in {s.name for s in q.disc.free_symbols()}]
    if not param_quads and report.residual_factor == ONE_EXPR:
        ok = _roots_integer_at(report, "", 0)
        return IntegralityRecord(name, None if ok else (), "constant", note="resonances do not depend on the parameter")
    if len(param_quads) == 1 and report.residual_factor == ONE_EXPR:
        q = param_quads[0]
        d = _univariate(q.disc, name)
        if d is not None and len(d) == 3 and all(c.denominator == 1 for c in d):
            C, B, A = (int(c) for c in d)
            a = math.isqrt(A) if A > 0 else -1
            if a > 0 and a * a == A:
                K = B * B - 4 * A * C
                if K != 0:
                    values, wit = [], []
                    for dd in P._divisors(K):
                        for sgn in (1, -1):
                            d1 = sgn * dd
                            d2 = K // d1
                            if (d1 + d2) % 2:
                                continue
                            M, N = (d1 + d2) // 2, (d2 - d1) // 2
                            if N < 0 or N % (2 * a) or (M - B) % (2 * A):
                                continue
                            eps = (M - B) // (2 * A)
                            if eps < 1 or not _roots_integer_at(report, name, eps):
                                continue
                            if eps not in values:
                                values.append(eps)
                                wit.append((eps, M // (2 * a) if M % (2 * a) == 0 else M, N // (2 * a)))
                    kk = Fraction(K, 4 * A)
                    return IntegralityRecord(
                        name, tuple(sorted(values)), "diophantine", q.disc, tuple(sorted(wit)), kk,
                        note=f"m**2 - n**2 = {kk} with m = ({2 * A}*{name} {'-' if B < 0 else '+'} {abs(B)})/{2 * a}, n = sqrt(disc)",
                    )
    values = tuple(v for v in range(1, SEARCH_LIMIT + 1) if _roots_integer_at(report, name, v))
    return IntegralityRecord(name, values, "search", note=f"searched {name} = 1..{SEARCH_LIMIT}")
