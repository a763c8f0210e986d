"""PT-symmetric deformation of designated derivative slots.

The first derivative is replaced by ``-i (i f_x)**eps = i**(eps-1) f_x**eps``; the
n-th derivative by ordinary differentiation of one deformed derivative,
``i**(eps-1) d_x**(n-1) (f_x**eps)``.  Concrete integer exponents give fully
expanded polynomials in the jets; symbolic exponents keep ``i**(eps-1)`` and
``f_x**eps`` as factors with affine exponents.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import UnsupportedDeformation
from .symcore.exponents import SymExp, exp_sub
from .symcore.expr import ZERO_EXPR, Expr, I_EXPR, conjugate, differentiate, substitute
from .symcore.symbols import DIFFERENTIABLE, INDEPENDENT, JET, Symbol, exponent_symbol, independent, jet

DeformExponent = Union[int, SymExp, str]


def _as_exponent(eps: DeformExponent):
    if isinstance(eps, str):
        return SymExp.var(eps)
    if isinstance(eps, Symbol):
        return SymExp.var(eps.name)
    if isinstance(eps, SymExp):
        return eps
    if isinstance(eps, bool) or not isinstance(eps, int):
        raise UnsupportedDeformation(f"deformation exponent must be an integer or symbol, got {eps!r}")
    if eps <= 0:
        raise UnsupportedDeformation(f"deformation exponent must be >= 1, got {eps}")
    return eps


def _field_symbol(f) -> Symbol:
    if isinstance(f, Symbol):
        return f
    return jet(f)


def deform_first(f, eps: DeformExponent) -> Expr:
    """``-i (i f_x)**eps`` in canonical form."""
    e = _as_exponent(eps)
    fx = Expr.sym(_field_symbol(f).derivative("x"))
    if isinstance(e, int):
        return -I_EXPR * (I_EXPR * fx) ** e
    return I_EXPR ** exp_sub(e, 1) * fx ** e


def deform_nth(f, n: int, eps: DeformExponent) -> Expr:
    """``i**(eps-1) d_x**(n-1) (f_x**eps)``; ``n = 1`` reduces to :func:`deform_first`."""
    if n < 1:
        raise UnsupportedDeformation(f"derivative order must be >= 1, got {n}")
    first = deform_first(f, eps)
    if n == 1:
        return first
    return differentiate(first, "x", n - 1)


@dataclass(frozen=True)
class DeformedDerivative:
    """One deformed slot ``f_{x^n; eps}``."""

    base: Symbol
    order: int
    exponent: object
    form: Expr = field(compare=False)

    @property
    def expanded(self) -> Optional[Expr]:
        return self.form if isinstance(self.exponent, int) else None

    @classmethod
    def build(cls, f, n: int, eps: DeformExponent) -> DeformedDerivative:
        e = _as_exponent(eps)
        return cls(_field_symbol(f), n, e, deform_nth(f, n, e))


def apply_deformation(template, eps, mu=None):
    """Bind the deformation exponents of a :class:`PDESystem` template.

    ``eps``/``mu`` are ints, or ``None`` to keep the exponent symbolic; ``mu``
    defaults to ``eps``.
    """
    if mu is None:
        mu = eps
    binds = {}
    for name, value in (("eps", eps), ("mu", mu)):
        if value is not None:
            _as_exponent(value)
        binds[name] = value
    return template.with_deformation(**binds)


def pt_transform(e: Expr) -> Expr:
    """Apply ``x -> -x, t -> -t, i -> -i`` with ``u`` a PT-even field."""
    e = conjugate(e)
    bindings = {}
    for s in e.free_symbols():
        if s.kind == INDEPENDENT and s.name in ("x", "t"):
            bindings[s] = -Expr.sym(s)
        elif s.kind in DIFFERENTIABLE and s.derivs:
            k = sum(1 for d in s.derivs if d in ("x", "t"))
            if k % 2:
                bindings[s] = -Expr.sym(s)
    return substitute(e, bindings)


def pt_parity(e: Expr) -> Optional[int]:
    """+1 if ``e`` is PT-invariant, -1 if it changes sign, ``None`` otherwise."""
    t = pt_transform(e)
    if t == e:
        return 1
    if t == -e:
        return -1
    return None


def spatial_order(e: Expr, field_name: str = "u", var: str = "x") -> int:
    """Highest number of ``var`` derivatives on any jet of ``field_name``."""
    best = 0
    for s in e.free_symbols():
        if s.kind == JET and s.base == field_name:
            best = max(best, s.count(var))
    return best


def total_order(e: Expr, field_name: str = "u") -> int:
    best = 0
    for s in e.free_symbols():
        if s.kind == JET and s.base == field_name:
            best = max(best, s.order)
    return best
