"""Root test, Gamma-function bound and Stirling check on coefficient sequences."""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

import mpmath

from ..symcore.expr import Expr
from ..symcore.gauss import GaussRational
from .sequence import DEFAULT_PREC, CoefficientSequence, exact_at, to_mpc

CONVERGENT = "CONVERGENT-INDICATION"
INCONCLUSIVE = "INCONCLUSIVE"
MIN_ENTRIES = 10


@dataclass(frozen=True)
class RootTestResult:
    values: tuple[tuple[int, object], ...]  # (n, |alpha_n|**(1/n)) over nonzero entries
    limit: object  # fitted L in v_n = L + c/n over the tail
    slope: object  # fitted c
    strictly_decreasing: bool
    verdict: str
    note: str = ""

    @property
    def radius(self):
        if self.limit is None or self.limit <= 0:
            return mpmath.inf
        return 1 / self.limit


def _fit(points):
    """Least-squares fit ``v = L + c/n``."""
    k = len(points)
    xs = [mpmath.mpf(1) / n for n, _ in points]
    ys = [v for _, v in points]
    mx = sum(xs) / k
    my = sum(ys) / k
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        return my, mpmath.mpf(0)
    c = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx
    return my - c * mx, c


def root_test(seq: CoefficientSequence, tail: int = 5, min_entries: int = MIN_ENTRIES) -> RootTestResult:
    """Cauchy root test on ``|alpha_n|**(1/n)``.

    The verdict is a convergence indication when the fitted tail limit and
    every tail value lie below 1.
    """
    with mpmath.workprec(seq.prec):
        vals = seq.nth_roots()
        if not vals:
            return RootTestResult((), None, None, False, INCONCLUSIVE, "all entries vanish")
        dec = all(b[1] < a[1] for a, b in zip(vals, vals[1:]))
        if len(vals) < min_entries:
            return RootTestResult(tuple(vals), None, None, dec, INCONCLUSIVE, f"fewer than {min_entries} nonzero entries")
        pts = vals[-tail:] if tail < len(vals) else vals
        L, c = _fit(pts)
        ok = L < 1 and all(v < 1 for _, v in pts)
        return RootTestResult(tuple(vals), L, c, dec, CONVERGENT if ok else INCONCLUSIVE)


# ---------------------------------------------------------------------------
# Gamma bound


@dataclass(frozen=True)
class BoundEntry:
    m: int  # sequence index 3n - nu
    n: int
    nu: int
    re_lhs: object
    im_lhs: object
    numerator: GaussRational  # p_m at the bindings
    re_rhs: object
    im_rhs: object
    holds: bool


@dataclass(frozen=True)
class BoundReport:
    entries: tuple[BoundEntry, ...]

    @property
    def holds(self) -> bool:
        return all(e.holds for e in self.entries)

    @property
    def holds_up_to(self) -> int:
        last = 0
        for e in self.entries:
            if not e.holds:
                break
            last = e.m
        return last

    @property
    def failures(self) -> list[int]:
        return [e.m for e in self.entries if not e.holds]


def split_index(m: int) -> tuple[int, int]:
    """``m = 3n - nu`` with ``nu`` in {0, 1, 2}."""
    n = -(-m // 3)
    return n, 3 * n - m


def numerator_value(coef: Expr, bindings) -> GaussRational:
    """Numerator of the exact coefficient: its rational scalar's numerator times the parameter monomial.

    ``-1509727 i omega**10 / (D kappa**19)`` has numerator ``-1509727 i omega**10``;
    parameter factors with negative powers form the denominator and are dropped.
    """
    total = GaussRational(0)
    for mono, c in coef.raw_items():
        den = lcm(int(c.re.denominator), int(c.im.denominator))
        factors = [(s, e) for s, e in mono if isinstance(e, int) and e > 0]
        total = total + exact_at(Expr.monomial(c * den, factors), bindings)
    return total


def bound_check(seq: CoefficientSequence, order: int = 30, kappa=None) -> BoundReport:
    """Check ``|Re a_m| <= |Re p_m| / (2**(3n+4-nu) Gamma(m/2) |kappa|**(2n-1))`` and the same for Im."""
    b = dict(seq.bindings)
    kap = kappa if kappa is not None else b.get("kappa", 1)
    out = []
    with mpmath.workprec(seq.prec):
        kmag = abs(to_mpc(GaussRational.coerce(kap), seq.prec))
        for e in seq.entries:
            if e.n > order:
                continue
            m = e.n
            n, nu = split_index(m)
            p = numerator_value(e.coefficient, b)
            denom = mpmath.mpf(2) ** (3 * n + 4 - nu) * mpmath.gamma(mpmath.mpf(m) / 2) * kmag ** (2 * n - 1)
            val = to_mpc(e.value, seq.prec)
            pv = to_mpc(p, seq.prec)
            re_l, im_l = abs(val.real), abs(val.imag)
            re_r, im_r = abs(pv.real) / denom, abs(pv.imag) / denom
            out.append(BoundEntry(m, n, nu, re_l, im_l, p, re_r, im_r, bool(re_l <= re_r and im_l <= im_r)))
    return BoundReport(tuple(out))


def stirling_ratio(n, prec: int = DEFAULT_PREC):
    """``Gamma(n/2) / (sqrt(2 pi) exp(-n/2) (n/2)**((n-1)/2))``."""
    with mpmath.workprec(prec):
        x = mpmath.mpf(n) / 2
        return mpmath.gamma(x) / (mpmath.sqrt(2 * mpmath.pi) * mpmath.exp(-x) * x ** ((mpmath.mpf(n) - 1) / 2))
