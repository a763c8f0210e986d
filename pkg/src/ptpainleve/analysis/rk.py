"""Embedded Runge-Kutta integration at configurable binary precision.

The tableau is Fehlberg's 7(8) pair with exact rational coefficients; the
8th-order solution is propagated and the difference to the 7th-order one
drives step-size control.  Arithmetic uses gmpy2 ``mpc``/``mpfr`` so that
tolerances far below double precision are meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F
from functools import lru_cache
from typing import Callable, Sequence

import gmpy2


@dataclass(frozen=True)
class Tableau:
    c: tuple[F, ...]
    a: tuple[tuple[F, ...], ...]
    b: tuple[F, ...]  # propagated solution
    b_hat: tuple[F, ...]  # embedded solution
    order: int
    embedded_order: int

    @property
    def stages(self) -> int:
        return len(self.c)


FEHLBERG78 = Tableau(
    c=(F(0), F(2, 27), F(1, 9), F(1, 6), F(5, 12), F(1, 2), F(5, 6), F(1, 6), F(2, 3), F(1, 3), F(1), F(0), F(1)),
    a=(
        (),
        (F(2, 27),),
        (F(1, 36), F(1, 12)),
        (F(1, 24), F(0), F(1, 8)),
        (F(5, 12), F(0), F(-25, 16), F(25, 16)),
        (F(1, 20), F(0), F(0), F(1, 4), F(1, 5)),
        (F(-25, 108), F(0), F(0), F(125, 108), F(-65, 27), F(125, 54)),
        (F(31, 300), F(0), F(0), F(0), F(61, 225), F(-2, 9), F(13, 900)),
        (F(2), F(0), F(0), F(-53, 6), F(704, 45), F(-107, 9), F(67, 90), F(3)),
        (F(-91, 108), F(0), F(0), F(23, 108), F(-976, 135), F(311, 54), F(-19, 60), F(17, 6), F(-1, 12)),
        (F(2383, 4100), F(0), F(0), F(-341, 164), F(4496, 1025), F(-301, 82), F(2133, 4100), F(45, 82), F(45, 164), F(18, 41)),
        (F(3, 205), F(0), F(0), F(0), F(0), F(-6, 41), F(-3, 205), F(-3, 41), F(3, 41), F(6, 41), F(0)),
        (F(-1777, 4100), F(0), F(0), F(-341, 164), F(4496, 1025), F(-289, 82), F(2193, 4100), F(51, 82), F(33, 164), F(12, 41), F(0), F(1)),
    ),
    b=(F(0), F(0), F(0), F(0), F(0), F(34, 105), F(9, 35), F(9, 35), F(9, 280), F(9, 280), F(0), F(41, 840), F(41, 840)),
    b_hat=(F(41, 840), F(0), F(0), F(0), F(0), F(34, 105), F(9, 35), F(9, 35), F(9, 280), F(9, 280), F(41, 840), F(0), F(0)),
    order=8,
    embedded_order=7,
)


# ---------------------------------------------------------------------------
# order conditions via rooted trees


@lru_cache(maxsize=None)
def rooted_trees(order: int) -> tuple:
    """All rooted trees with ``order`` vertices; a tree is the sorted tuple of its subtrees."""
    if order == 1:
        return ((),)
    out = set()

    def build(remaining: int, max_part: int, prefix: tuple):
        if remaining == 0:
            out.add(tuple(sorted(prefix)))
            return
        for k in range(min(remaining, max_part), 0, -1):
            for t in rooted_trees(k):
                build(remaining - k, k, prefix + (t,))

    build(order - 1, order - 1, ())
    return tuple(sorted(out))


def tree_order(t) -> int:
    return 1 + sum(tree_order(s) for s in t)


def tree_density(t) -> int:
    g = tree_order(t)
    for s in t:
        g *= tree_density(s)
    return g


def _stage_weights(tab: Tableau, t, memo: dict) -> list[F]:
    hit = memo.get(t)
    if hit is not None:
        return hit
    inner = [_stage_weights(tab, s, memo) for s in t]
    out = []
    for i in range(tab.stages):
        w = F(1)
        for vec in inner:
            w *= sum((tab.a[i][j] * vec[j] for j in range(len(tab.a[i]))), F(0))
        out.append(w)
    memo[t] = out
    return out


def order_condition_defects(tab: Tableau, weights: Sequence[F], max_order: int) -> list[tuple]:
    """Trees up to ``max_order`` whose condition ``b . Phi(t) = 1/gamma(t)`` is violated."""
    bad = []
    memo: dict = {}
    for p in range(1, max_order + 1):
        for t in rooted_trees(p):
            phi = _stage_weights(tab, t, memo)
            lhs = sum((w * x for w, x in zip(weights, phi)), F(0))
            if lhs != F(1, tree_density(t)):
                bad.append((p, t, lhs))
    return bad


def row_sum_defects(tab: Tableau) -> list[int]:
    return [i for i in range(tab.stages) if sum(tab.a[i], F(0)) != tab.c[i]]


# ---------------------------------------------------------------------------
# integrator


class IntegrationError(RuntimeError):
    def __init__(self, message: str, reached):
        super().__init__(f"{message} (reached z={reached})")
        self.reached = reached


@dataclass
class Solution:
    points: list  # [(z, [y_0, y_1, ...]), ...] at accepted steps
    steps: int
    rejected: int


def integrate(
    f: Callable,
    z0,
    y0: Sequence,
    z1,
    rtol: float = 1e-10,
    atol: float = 0.0,
    prec: int = 150,
    h0=None,
    tableau: Tableau = FEHLBERG78,
    max_steps: int = 200_000,
) -> Solution:
    """Integrate ``y' = f(z, y)`` along the real segment from ``z0`` to ``z1``."""
    ctx = gmpy2.get_context().copy()
    ctx.precision = prec
    ctx.real_prec = ctx.imag_prec = prec
    with gmpy2.context(ctx):
        a = [[gmpy2.mpfr(x.numerator) / x.denominator for x in row] for row in tableau.a]
        c = [gmpy2.mpfr(x.numerator) / x.denominator for x in tableau.c]
        b = [gmpy2.mpfr(x.numerator) / x.denominator for x in tableau.b]
        e = [gmpy2.mpfr((x - y).numerator) / (x - y).denominator for x, y in zip(tableau.b, tableau.b_hat)]
        rt = gmpy2.mpfr(rtol)
        at = gmpy2.mpfr(atol)
        z = gmpy2.mpfr(z0)
        end = gmpy2.mpfr(z1)
        y = [gmpy2.mpc(v) for v in y0]
        direction = 1 if end >= z else -1
        span = abs(end - z)
        h = gmpy2.mpfr(h0) if h0 is not None else span / 64
        h = h * direction
        expo = gmpy2.mpfr(1) / (tableau.embedded_order + 1)
        points = [(z, list(y))]
        steps = rejected = 0
        dim = len(y)
        hmin = span * gmpy2.mpfr(2) ** (-prec // 2)
        while (end - z) * direction > 0:
            if steps + rejected > max_steps:
                raise IntegrationError("step limit exceeded", z)
            if (z + h - end) * direction > 0:
                h = end - z
            ks = []
            for i in range(tableau.stages):
                row = a[i]
                yi = list(y)
                for j, aij in enumerate(row):
                    if aij:
                        kj = ks[j]
                        for d in range(dim):
                            yi[d] = yi[d] + h * aij * kj[d]
                try:
                    ks.append(f(z + c[i] * h, yi))
                except ZeroDivisionError:
                    raise IntegrationError("right-hand side is singular", z) from None
            err = 0
            ynew = list(y)
            for d in range(dim):
                acc = 0
                est = 0
                for i in range(tableau.stages):
                    if b[i]:
                        acc = acc + b[i] * ks[i][d]
                    if e[i]:
                        est = est + e[i] * ks[i][d]
                ynew[d] = y[d] + h * acc
                scale = at + rt * max(abs(y[d]), abs(ynew[d]))
                if scale == 0:
                    scale = rt
                err = max(err, abs(h * est) / scale)
            if not gmpy2.is_finite(err):
                raise IntegrationError("non-finite error estimate", z)
            if err <= 1:
                z = z + h
                y = ynew
                steps += 1
                points.append((z, list(y)))
                grow = 4 if err == 0 else min(gmpy2.mpfr(4), max(gmpy2.mpfr("0.2"), gmpy2.mpfr("0.9") * (1 / err) ** expo))
                h = h * grow
            else:
                rejected += 1
                h = h * max(gmpy2.mpfr("0.1"), gmpy2.mpfr("0.9") * (1 / err) ** expo)
                if abs(h) < hmin:
                    raise IntegrationError("step size underflow", z)
        return Solution(points, steps, rejected)
