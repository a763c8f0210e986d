"""Residual oracle: substitute a truncated expansion into the equation by direct symbolic algebra."""

from __future__ import annotations

from ..symcore.exponents import SymExp
from ..symcore.expr import ZERO_EXPR, Expr, collect_phi_powers, differentiate_along
from ..symcore.symbols import function_of_t
from .balance import BalanceResult, apply_constraints, field_jets
from .expansion import OMEGA, PainleveExpansion


def _rules(mode: str):
    if mode == "general":
        return None
    if mode == "reduced":
        return {("phi", "x"): Expr.const(1), ("phi", "t"): -Expr.sym(function_of_t("xi", 1))}
    return {("phi", "x"): Expr.const(1), ("phi", "t"): -Expr.sym(OMEGA)}


def _truncated_product(factors, coef: Expr, cutoff: int) -> dict[int, Expr]:
    """``coef * prod(series)`` keeping phi-powers up to ``cutoff``."""
    lows = [min(f) for f in factors]
    acc = {0: coef}
    for i, f in enumerate(factors):
        rest = sum(lows[i + 1:])
        nxt: dict[int, Expr] = {}
        for pa, ca in acc.items():
            for pb, cb in f.items():
                p = pa + pb
                if p + rest > cutoff:
                    continue
                nxt[p] = nxt.get(p, ZERO_EXPR) + ca * cb
        acc = nxt
    return acc


def residual(system, balance: BalanceResult, expansion: PainleveExpansion) -> dict[int, Expr]:
    """Nonzero phi-coefficients of the equation with ``u`` replaced by the truncated series.

    Keys are relative orders: 0 is the leading (most singular) order of the
    balance.  Orders past ``computed_order`` are not formed.  An expansion is
    correct iff the result is empty.
    """
    eq = apply_constraints(system.equation, balance.constraints)
    base = balance.leading_exponent
    if isinstance(base, SymExp):
        raise ValueError("residual oracle needs a concrete leading exponent")
    u = expansion.as_expr()
    rules = _rules(expansion.mode)
    series = {}
    for s in field_jets(eq, system.field):
        v = differentiate_along(u, s.derivs, expansion.mode, rules) if s.derivs else u
        series[s] = {k: c for k, c in collect_phi_powers(v).items() if c}
    cutoff = base + expansion.computed_order
    total: dict[int, Expr] = {}
    for mono, c in eq.raw_items():
        factors, rest = [], []
        for sym, p in mono:
            if sym in series:
                if not isinstance(p, int) or p < 0:
                    raise ValueError(f"residual oracle needs non-negative integer powers of {sym.name}")
                factors.extend([series[sym]] * p)
            else:
                rest.append((sym, p))
        if any(not f for f in factors):
            continue
        for k, v in _truncated_product(factors, Expr.monomial(c, tuple(rest)), cutoff).items():
            total[k] = total.get(k, ZERO_EXPR) + v
    return {k - base: v for k, v in sorted(total.items()) if v}


def solved_orders_vanish(system, balance: BalanceResult, expansion: PainleveExpansion) -> tuple[bool, list[int]]:
    """True iff every relative order the engine solved has zero residual; also the offending orders."""
    res = residual(system, balance, expansion)
    bad = sorted(k for k in res if 0 <= k <= expansion.computed_order)
    return not bad, bad
