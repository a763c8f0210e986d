"""Numeric cross-check of a truncated travelling-wave expansion against direct ODE integration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

import gmpy2

from ..symcore.expr import Expr, substitute
from .diagnostics import root_test
from .rk import IntegrationError, integrate
from .sequence import DEFAULT_PREC, CoefficientSequence, bind_values, exact_at
from .travelling import V, reduce_travelling, solve_for_top, zeta_jet

DEFAULT_FLOOR = 0.05
RADIUS_FRACTION = 0.5


@dataclass(frozen=True)
class NumericComparison:
    max_deviation: object
    window: tuple[object, object]
    order: int
    steps: int
    argmax: object = None
    note: str = ""

    def __float__(self):
        return float(self.max_deviation)


def _mp(g, prec):
    re = gmpy2.mpfr(int(g.re.numerator)) / int(g.re.denominator)
    im = gmpy2.mpfr(int(g.im.numerator)) / int(g.im.denominator)
    return gmpy2.mpc(re, im)


def _compile(e: Expr, jets, prec):
    index = {s: i for i, s in enumerate(jets)}
    out = []
    for mono, c in e.raw_items():
        factors = []
        for s, p in mono:
            if s not in index:
                raise ValueError(f"unbound symbol {s.name} in travelling ODE")
            factors.append((index[s], p))
        out.append((_mp(c, prec), tuple(factors)))
    return out


def _eval(poly, y):
    total = 0
    for c, factors in poly:
        t = c
        for i, p in factors:
            t = t * y[i] ** p
        total = total + t
    return total


class _Series:
    def __init__(self, expansion, bindings, prec):
        self.alpha = expansion.alpha
        self.coeffs = [(k + expansion.alpha, _mp(exact_at(c, bindings), prec)) for k, c in enumerate(expansion.coefficients) if c]

    def jets(self, z, count: int) -> list:
        out = []
        for d in range(count):
            total = 0
            for p, c in self.coeffs:
                ff = 1
                for j in range(d):
                    ff *= p - j
                if ff:
                    total = total + c * ff * z ** (p - d)
            out.append(total)
        return out


def numeric_compare(
    expansion,
    system,
    window=(0.1, 0.5),
    bindings: Optional[Mapping[str, object]] = None,
    rtol: float = 1e-10,
    prec: int = DEFAULT_PREC,
    floor: float = DEFAULT_FLOOR,
    radius=None,
    start: str = "outer",
) -> NumericComparison:
    """Max relative deviation between the truncated series and the integrated travelling-wave ODE.

    The ODE is integrated along real ``z = phi`` with speed ``v = omega``,
    starting from the series values at one end of the window. Starting at the
    outer end integrates toward the pole, which damps the resonant modes.
    """
    if start not in ("inner", "outer"):
        raise ValueError(f"start must be 'inner' or 'outer', got {start!r}")
    bindings = dict(bindings or {"kappa": 1, "omega": 1})
    ctx = gmpy2.get_context().copy()
    ctx.precision = prec
    ctx.real_prec = ctx.imag_prec = prec
    with gmpy2.context(ctx):
        lo = max(gmpy2.mpfr(window[0]), gmpy2.mpfr(floor))
        hi = gmpy2.mpfr(window[1])
        if radius is None:
            rt = root_test(CoefficientSequence.from_expansion(expansion, bindings, prec))
            if rt.limit is not None and rt.limit > 0:
                radius = gmpy2.mpfr(str(1 / rt.limit))
        if radius is not None:
            hi = min(hi, gmpy2.mpfr(radius) * gmpy2.mpfr(RADIUS_FRACTION))
        if hi <= lo:
            return NumericComparison(gmpy2.mpfr(0), (lo, hi), expansion.computed_order, 0, note="empty window")
        trav = reduce_travelling(system)
        env = bind_values(bindings)
        env[V] = env[next(s for s in env if s.name == "omega")]
        ode = substitute(trav.ode, env)
        top, A, B = solve_for_top(ode)
        k = trav.order
        jets = [zeta_jet(i) for i in range(k)]
        pa, pb = _compile(A, jets, prec), _compile(B, jets, prec)

        def rhs(z, y):
            return list(y[1:]) + [-_eval(pb, y) / _eval(pa, y)]

        series = _Series(expansion, bindings, prec)
        z0, z1 = (lo, hi) if start == "inner" else (hi, lo)
        y0 = series.jets(z0, k)
        try:
            sol = integrate(rhs, z0, y0, z1, rtol=rtol, prec=prec)
        except IntegrationError as exc:
            return NumericComparison(gmpy2.mpfr("inf"), (lo, hi), expansion.computed_order, 0, exc.reached, str(exc))
        worst, where = gmpy2.mpfr(0), lo
        for z, y in sol.points:
            ref = series.jets(z, 1)[0]
            dev = abs(y[0] - ref) / abs(ref)
            if dev > worst:
                worst, where = dev, z
        return NumericComparison(worst, (lo, hi), expansion.computed_order, sol.steps, where)
