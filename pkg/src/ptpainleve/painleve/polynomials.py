"""Dense univariate polynomials over Gaussian rationals (coefficient lists, lowest degree first)."""

from __future__ import annotations

import math
from fractions import Fraction

from ..symcore.gauss import ONE, ZERO, GaussRational

Poly = list  # list[GaussRational]


def trim(p: Poly) -> Poly:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def degree(p: Poly) -> int:
    return len(trim(p)) - 1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else ZERO) + (q[i] if i < len(q) else ZERO) for i in range(n)])


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def scale(p: Poly, c) -> Poly:
    c = GaussRational.coerce(c)
    return trim([a * c for a in p])


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    out = [ZERO] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    while len(r) >= len(q) and r:
        k = len(r) - len(q)
        c = r[-1] / lead
        out[k] = c
        for i, b in enumerate(q):
            r[i + k] = r[i + k] - c * b
        r = trim(r)
    return trim(out), r


def monic(p: Poly) -> Poly:
    p = trim(p)
    if not p:
        return p
    return scale(p, p[-1].inverse())


def gcd(p: Poly, q: Poly) -> Poly:
    p, q = trim(p), trim(q)
    while q:
        p, q = q, divmod_poly(p, q)[1]
    return monic(p)


def evaluate(p: Poly, x) -> GaussRational:
    x = GaussRational.coerce(x)
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def from_roots(roots) -> Poly:
    out: Poly = [ONE]
    for r in roots:
        out = mul(out, [-GaussRational.coerce(r), ONE])
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return [0]
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(p: Poly) -> tuple[list[Fraction], Poly]:
    """Rational roots with multiplicity of a polynomial with rational coefficients, and the deflated rest."""
    p = monic(p)
    if any(c.im for c in p):
        return [], p
    roots: list[Fraction] = []
    while p and not p[0]:
        roots.append(Fraction(0))
        p = p[1:]
    if len(p) <= 1:
        return roots, p
    fr = [c.as_fraction() for c in p]
    den = 1
    for c in fr:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in fr]
    cands = set()
    for a in _divisors(ints[0]):
        for b in _divisors(ints[-1]):
            cands.add(Fraction(a, b))
            cands.add(Fraction(-a, b))
    changed = True
    while changed and len(p) > 1:
        changed = False
        for c in sorted(cands):
            if not evaluate(p, c):
                roots.append(c)
                p, _ = divmod_poly(p, [GaussRational(-c), ONE])
                changed = True
                break
    return sorted(roots), p


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def format_poly(p: Poly, var: str = "r") -> str:
    from ..symcore.expr import Expr, format_expr
    from ..symcore.symbols import exponent_symbol

    e = Expr.const(0)
    for k, c in enumerate(p):
        e = e + Expr.const(c) * Expr.sym(exponent_symbol(var), k)
    return format_expr(e)
