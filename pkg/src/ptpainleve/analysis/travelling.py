"""Travelling-wave reduction ``u(x, t) = zeta(x - v t)`` and first integrals."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..errors import UnsupportedExponentForm
from ..symcore.exponents import SymExp
from ..symcore.expr import ONE_EXPR, ZERO_EXPR, Expr, differentiate, monomial_gcd, substitute
from ..symcore.symbols import JET, independent, jet, parameter

V = parameter("v")
Z = independent("z")


def zeta_jet(k: int):
    return jet("zeta", ("z",) * k, ("z",))


@dataclass(frozen=True)
class TravellingWaveODE:
    ode: Expr
    speed: object
    order: int
    integrated: Optional[Expr] = None
    integrating_factor: Optional[Expr] = None

    def jets(self) -> list:
        return [zeta_jet(k) for k in range(self.order + 1)]


def reduce_equation(eq: Expr, field_name: str = "u", speed=V) -> Expr:
    speed_e = Expr.coerce(speed)
    bind = {}
    for s in eq.free_symbols():
        if s.kind == JET and s.base == field_name:
            a, b = s.count("x"), s.count("t")
            bind[s] = (-speed_e) ** b * Expr.sym(zeta_jet(a + b)) if b else Expr.sym(zeta_jet(a))
    return substitute(eq, bind)


def _order(e: Expr) -> int:
    return max((s.order for s in e.free_symbols() if s.kind == JET and s.base == "zeta"), default=-1)


def integrate_total_derivative(e: Expr) -> Optional[Expr]:
    """``F`` with ``dF/dz = e`` when ``e`` is a total derivative in the zeta jets, else ``None``."""
    remaining = e
    total = ZERO_EXPR
    for _ in range(64):
        if not remaining:
            return total
        k = _order(remaining)
        if k <= 0:
            if remaining.free_symbols() & {zeta_jet(0)}:
                return None
            return total + remaining * Expr.sym(Z)
        top = zeta_jet(k)
        below = zeta_jet(k - 1)
        coeff = ZERO_EXPR
        for mono, c in remaining.raw_items():
            d = dict(mono)
            p = d.get(top, 0)
            if isinstance(p, SymExp) or p > 1:
                return None
            if p == 1:
                rest = tuple((s, x) for s, x in mono if s != top)
                coeff = coeff + Expr.monomial(c, rest)
        if not coeff:
            return None
        g = ZERO_EXPR
        for mono, c in coeff.raw_items():
            d = dict(mono)
            p = d.get(below, 0)
            if isinstance(p, SymExp) or p == -1:
                return None
            rest = tuple((s, x) for s, x in mono if s != below)
            g = g + Expr.monomial(c / (p + 1), rest + ((below, p + 1),))
        total = total + g
        remaining = remaining - differentiate(g, "z")
    return None


def reduce_travelling(system, v=V) -> TravellingWaveODE:
    """Exact ODE for ``zeta(z)``; also the once-integrated form when one exists."""
    eq = system.equation
    for m, _ in eq.raw_items():
        if any(isinstance(p, SymExp) for _, p in m):
            raise UnsupportedExponentForm("travelling-wave reduction requires concrete deformation exponents")
    ode = reduce_equation(eq, system.field, v)
    order = _order(ode)
    factor = monomial_gcd(ode)
    body = ode / factor
    first = integrate_total_derivative(body)
    return TravellingWaveODE(ode, v, order, first, factor if first is not None else None)


def solve_for_top(ode: Expr) -> tuple[object, Expr, Expr]:
    """Split ``ode = A * zeta_top + B``; raises if the top jet is not linear."""
    k = _order(ode)
    top = zeta_jet(k)
    A, B = ZERO_EXPR, ZERO_EXPR
    for mono, c in ode.raw_items():
        d = dict(mono)
        p = d.get(top, 0)
        if p == 0:
            B = B + Expr._wrap({mono: c})
        elif p == 1:
            A = A + Expr.monomial(c, tuple((s, x) for s, x in mono if s != top))
        else:
            raise UnsupportedExponentForm(f"highest derivative {top.name} enters nonlinearly")
    return top, A, B
