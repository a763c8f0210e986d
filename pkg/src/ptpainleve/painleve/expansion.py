"""Order-by-order Painlevé expansion with resonance compatibility checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from ..errors import InternalInvariantViolation, UnsupportedExponentForm
from ..symcore.exponents import SymExp
from ..symcore.expr import ONE_EXPR, PHI, ZERO_EXPR, Expr, differentiate, substitute
from ..symcore.symbols import JET, coefficient, function_of_t, parameter
from .balance import BalanceResult, apply_constraints, field_jets
from .resonance import resonance_spectrum
from .series import ConstNode, DerivNode, FieldNode, Node, ProdNode

MODES = ("general", "reduced", "travelling")
DEFAULT_ORDER = {"burgers": 30, "kdv": 33}
OMEGA = parameter("omega")


@dataclass(frozen=True)
class ResonanceRecord:
    index: int
    compatible: bool
    status: str  # "free", "bound" or "failed"
    value: Optional[Expr] = None
    obstruction: Optional[Expr] = None


@dataclass(frozen=True)
class PainleveExpansion:
    mode: str
    alpha: int
    order: int
    coefficients: tuple[Expr, ...]
    free_parameters: tuple = ()
    resonances: tuple[ResonanceRecord, ...] = ()
    failed: bool = False
    failure_index: Optional[int] = None
    resonance_roots: tuple[int, ...] = ()

    @property
    def computed_order(self) -> int:
        return len(self.coefficients) - 1

    def power(self, k: int) -> int:
        """phi-exponent carried by coefficient ``k``."""
        return k + self.alpha

    def terms(self) -> list[tuple[int, Expr]]:
        return [(k + self.alpha, c) for k, c in enumerate(self.coefficients)]

    def coefficient_of_power(self, p: int) -> Expr:
        k = p - self.alpha
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        raise IndexError(f"phi**{p} is outside the computed range")

    def as_expr(self, phi=PHI) -> Expr:
        out = ZERO_EXPR
        for p, c in self.terms():
            if c:
                out = out + c * Expr.sym(phi, p)
        return out


def phi_jet_values(mode: str, symbols) -> dict:
    """Values of phi-jets for ``phi = x - xi(t)`` (reduced) or ``phi = x - omega t`` (travelling)."""
    out = {}
    for s in symbols:
        if not (s.kind == JET and s.base == "phi" and s.derivs):
            continue
        nx, nt = s.count("x"), s.count("t")
        if nx and nt:
            out[s] = ZERO_EXPR
        elif nx:
            out[s] = ONE_EXPR if nx == 1 else ZERO_EXPR
        elif mode == "travelling":
            out[s] = -Expr.sym(OMEGA) if nt == 1 else ZERO_EXPR
        else:
            out[s] = -Expr.sym(function_of_t("xi", nt))
    return out


def reduce_to_mode(e: Expr, mode: str) -> Expr:
    if mode == "general":
        return e
    vals = phi_jet_values(mode, e.free_symbols())
    if mode == "travelling":
        for s in e.free_symbols():
            if s.kind == "function" and s.base == "xi" and s.derivs:
                vals[s] = Expr.sym(OMEGA) if len(s.derivs) == 1 else ZERO_EXPR
    return substitute(e, vals) if vals else e


class _Context:
    def __init__(self, mode: str):
        self.mode = mode
        if mode == "general":
            self.phi_x = Expr.sym(PHI.derivative("x"))
            self.phi_t = Expr.sym(PHI.derivative("t"))
        elif mode == "reduced":
            self.phi_x = ONE_EXPR
            self.phi_t = -Expr.sym(function_of_t("xi", 1))
        else:
            self.phi_x = ONE_EXPR
            self.phi_t = -Expr.sym(OMEGA)
        self._cache: dict = {}

    def phi_var(self, var: str) -> Expr:
        return self.phi_x if var == "x" else self.phi_t

    def diff(self, e: Expr, var: str) -> Expr:
        if not e:
            return e
        key = (id(e), var)
        hit = self._cache.get(key)
        if hit is not None and hit[0] is e:
            return hit[1]
        d = differentiate(e, var, 1, mode=self.mode)
        self._cache[key] = (e, d)
        return d


def _build(eq: Expr, alpha: int, lambda0: Expr, ctx: _Context, field_name: str):
    u = FieldNode(alpha, lambda0)
    nodes: list[Node] = [u]
    jet_nodes: dict = {(): u}

    def jet_node(derivs: tuple) -> Node:
        derivs = tuple(sorted(derivs, key=lambda v: 0 if v == "x" else 1))
        n = jet_nodes.get(derivs)
        if n is None:
            parent = jet_node(derivs[:-1])
            n = DerivNode(parent, derivs[-1], ctx.phi_var(derivs[-1]), ctx.diff)
            jet_nodes[derivs] = n
            nodes.append(n)
        return n

    prods: dict = {}

    def product(keys: tuple) -> Node:
        if len(keys) == 1:
            return jet_node(keys[0])
        n = prods.get(keys)
        if n is None:
            n = ProdNode(product(keys[:-1]), jet_node(keys[-1]))
            prods[keys] = n
            nodes.append(n)
        return n

    terms = []
    for mono, c in eq.raw_items():
        keys = []
        rest = []
        for s, p in mono:
            if s.kind == JET and s.base == field_name:
                if not isinstance(p, int) or p < 1:
                    raise UnsupportedExponentForm(f"field jet {s.name} appears with power {p}")
                keys.extend([s.derivs] * p)
            else:
                rest.append((s, p))
        coef = reduce_to_mode(Expr.monomial(c, rest), ctx.mode)
        if keys:
            node = product(tuple(sorted(keys, key=lambda d: (len(d), d))))
        else:
            node = ConstNode(ONE_EXPR)
            nodes.append(node)
        terms.append((coef, node))
    vmin = min(n.offset for _, n in terms)
    return nodes, [(c, n, n.offset - vmin) for c, n in terms], vmin


def expand(
    system,
    balance: BalanceResult,
    mode: str = "reduced",
    order: Optional[int] = None,
    fixed: Optional[Mapping[int, object]] = None,
    branch: int = 0,
) -> PainleveExpansion:
    """Compute ``lambda_0 .. lambda_order`` for a concrete-exponent system.

    ``fixed`` binds resonance coefficients (``{2: 0}``); unbound resonances get
    free symbols ``lambda_r``.  A failed compatibility condition stops the
    expansion and is recorded.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    eq = apply_constraints(system.equation, balance.constraints)
    field_name = system.field
    for m, _ in eq.raw_items():
        if any(isinstance(p, SymExp) for _, p in m):
            raise UnsupportedExponentForm("expansion requires concrete integer deformation exponents")
    report = resonance_spectrum(eq, balance, field_name)
    roots = report.positive_integer_roots
    if order is None:
        order = DEFAULT_ORDER.get(system.name, 30)
    if mode == "general" and order > max(roots + (1,)):
        raise ValueError(f"general mode is limited to orders up to the last resonance ({max(roots + (1,))})")
    fixed = {k: Expr.coerce(v) for k, v in (fixed or {}).items()}
    ctx = _Context(mode)
    lambda0 = reduce_to_mode(balance.lambda0[branch], mode)
    nodes, terms, vmin = _build(eq, balance.alpha, lambda0, ctx, field_name)

    coeffs: list[Expr] = []
    records: list[ResonanceRecord] = []
    free: list = []
    failed_at = None
    for j in range(order + 1):
        for n in nodes:
            n.step(j)
        g = ZERO_EXPR
        f = ZERO_EXPR
        for c, n, delta in terms:
            if delta == 0:
                gn, fn = n.cur
                if gn:
                    g = g + c * gn
                if fn:
                    f = f + c * fn
            elif j >= delta:
                v = n.final[j - delta]
                if v:
                    f = f + c * v
        if j == 0:
            if f:
                raise InternalInvariantViolation(f"leading-order equation not satisfied: {f}")
            value = lambda0
        elif not g:
            if j not in roots:
                raise InternalInvariantViolation(f"recursion degenerates at j={j}, which is not a resonance")
            if f:
                records.append(ResonanceRecord(j, False, "failed", None, f))
                failed_at = j
                break
            if j in fixed:
                value = reduce_to_mode(fixed[j], mode)
                records.append(ResonanceRecord(j, True, "bound", value))
            else:
                sym = coefficient(j)
                value = Expr.sym(sym)
                free.append(sym)
                records.append(ResonanceRecord(j, True, "free", value))
        else:
            if j in roots:
                raise InternalInvariantViolation(f"recursion does not degenerate at resonance j={j}")
            if not g.is_monomial():
                raise InternalInvariantViolation(f"non-monomial recursion factor at j={j}: {g}")
            value = -f / g
        for n in nodes:
            n.finalize(value)
        coeffs.append(value)
    return PainleveExpansion(
        mode, balance.alpha, order, tuple(coeffs), tuple(free), tuple(records),
        failed_at is not None, failed_at, roots,
    )
