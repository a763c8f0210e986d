"""PDESystem: a validated evolution equation with deformation slots."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Mapping, Optional

from ..deform import DeformedDerivative, deform_nth, spatial_order
from ..errors import PDESemanticError, UnsupportedDeformation, UnsupportedExponentForm
from ..symcore.expr import I_EXPR, ONE_EXPR, Expr, expr_to_exponent
from ..symcore.exponents import SymExp
from ..symcore.symbols import JET, exponent_symbol, independent, jet, parameter
from .ast import BinOp, Dt, Imag, Jet, Name, Neg, Node, Num, Slot, walk
from .parser import SystemSyntax, format_syntax, parse_syntax

RESERVED = {"phi", "xi", "theta", "alpha", "r", "zeta", "z", "v", "c"}
_LAMBDA = re.compile(r"^lambda\d+$")


@dataclass(frozen=True)
class PDESystem:
    """Evolution equation ``lhs = rhs`` in one field of ``(space, time)``."""

    name: str
    field: str
    variables: tuple[str, str]
    parameters: tuple[tuple[str, str], ...]
    lhs: Node
    rhs: Node
    deformation: tuple[tuple[str, Optional[int]], ...] = ()
    metadata: str = field(default="", compare=False)

    # declared data ---------------------------------------------------------
    @property
    def domains(self) -> dict[str, str]:
        return dict(self.parameters)

    @property
    def exponent_names(self) -> tuple[str, ...]:
        return tuple(n for n, d in self.parameters if d == "int")

    @property
    def bindings(self) -> dict[str, Optional[int]]:
        out = {n: None for n in self.exponent_names}
        out.update(dict(self.deformation))
        return out

    def with_deformation(self, **values: Optional[int]) -> PDESystem:
        known = set(self.exponent_names)
        for k, v in values.items():
            if k not in known:
                raise PDESemanticError(f"{self.name} has no integer parameter {k!r}", 0, 0)
            if v is not None and (isinstance(v, bool) or not isinstance(v, int) or v < 1):
                raise UnsupportedDeformation(f"deformation exponent {k} must be an integer >= 1, got {v!r}")
        b = self.bindings
        b.update(values)
        return replace(self, deformation=tuple(sorted(b.items())))

    def source(self) -> str:
        """DSL text of the template; deformation bindings are not part of it."""
        return format_syntax(
            SystemSyntax(self.name, self.field, self.variables, self.parameters, self.lhs, self.rhs)
        )

    # lowering ----------------------------------------------------------------
    def _exponent(self, node: Node):
        e = self._lower(node)
        if e.is_constant():
            c = e.constant_value()
            if c.im or c.re.denominator != 1:
                raise UnsupportedExponentForm(f"non-integral exponent {c}")
            return int(c.re)
        return expr_to_exponent(e)

    def _lower(self, node: Node) -> Expr:
        if isinstance(node, Num):
            return Expr.const(node.value)
        if isinstance(node, Imag):
            return I_EXPR
        if isinstance(node, Name):
            if node.id == self.field:
                return Expr.sym(jet(self.field, (), self.variables))
            if node.id in self.variables:
                return Expr.sym(independent(node.id))
            domain = self.domains[node.id]
            if domain == "int":
                value = self.bindings.get(node.id)
                return Expr.const(value) if value is not None else Expr.sym(exponent_symbol(node.id))
            return Expr.sym(parameter(node.id))
        if isinstance(node, Jet):
            return Expr.sym(jet(node.field, tuple(node.derivs), self.variables))
        if isinstance(node, Dt):
            return Expr.sym(jet(node.field, (self.variables[1],), self.variables))
        if isinstance(node, Slot):
            return deform_nth(jet(node.field, (), self.variables), node.order, self._exponent(node.exponent))
        if isinstance(node, Neg):
            return -self._lower(node.operand)
        if isinstance(node, BinOp):
            if node.op == "^":
                return self._lower(node.left) ** self._exponent(node.right)
            a, b = self._lower(node.left), self._lower(node.right)
            if node.op == "+":
                return a + b
            if node.op == "-":
                return a - b
            if node.op == "*":
                return a * b
            return a / b
        raise TypeError(f"unknown node {node!r}")

    @cached_property
    def equation(self) -> Expr:
        """``lhs - rhs`` with bound exponents substituted and slots expanded."""
        return self._lower(self.lhs) - self._lower(self.rhs)

    @property
    def slots(self) -> list[DeformedDerivative]:
        out = []
        for side in (self.lhs, self.rhs):
            for node in walk(side):
                if isinstance(node, Slot):
                    e = self._exponent(node.exponent)
                    out.append(DeformedDerivative(jet(node.field), node.order, e, deform_nth(jet(node.field), node.order, e)))
        return out

    @property
    def undeformed(self) -> PDESystem:
        return self.with_deformation(**{n: 1 for n in self.exponent_names})

    @property
    def order(self) -> int:
        """Highest spatial derivative order of the field."""
        return spatial_order(self.equation, self.field, self.variables[0])

    @property
    def is_concrete(self) -> bool:
        for m, _ in self.equation.raw_items():
            for _, e in m:
                if isinstance(e, SymExp):
                    return False
        return True

    def describe(self) -> str:
        b = ", ".join(f"{k}={'generic' if v is None else v}" for k, v in sorted(self.bindings.items()))
        return f"{self.name}({b})" if b else self.name


def _check_names(syn: SystemSyntax) -> None:
    if syn.field is None:
        raise PDESemanticError("no field declared", syn.line, syn.col)
    declared: dict[str, str] = {}
    for n in syn.variables:
        if n in declared or n == syn.field:
            raise PDESemanticError(f"duplicate name {n!r}", syn.line, syn.col)
        declared[n] = "variable"
    for n, d in syn.parameters:
        if n in declared or n == syn.field:
            raise PDESemanticError(f"duplicate name {n!r}", syn.line, syn.col)
        if n in RESERVED or _LAMBDA.match(n) or "_" in n:
            raise PDESemanticError(f"parameter name {n!r} is reserved", syn.line, syn.col)
        declared[n] = d
    for side in (syn.lhs, syn.rhs):
        for node in walk(side):
            if isinstance(node, Name) and node.id not in declared and node.id != syn.field:
                raise PDESemanticError(f"undeclared symbol {node.id!r}", node.line, node.col)
            if isinstance(node, (Dt, Slot, Jet)) and node.field != syn.field:
                raise PDESemanticError(f"undeclared field {node.field!r}", node.line, node.col)
            if isinstance(node, Jet) and any(ch not in syn.variables for ch in node.derivs):
                raise PDESemanticError(f"derivative in undeclared variable: {node.field}_{node.derivs}", node.line, node.col)
            if isinstance(node, Slot):
                for sub in walk(node.exponent):
                    if isinstance(sub, Name) and declared.get(sub.id) != "int":
                        raise PDESemanticError(f"deformation exponent must use integer parameters, got {sub.id!r}", sub.line, sub.col)
                    if isinstance(sub, (Imag, Jet, Dt, Slot)):
                        raise PDESemanticError("invalid deformation exponent", sub.line, sub.col)


def check_evolution_form(system: PDESystem) -> None:
    """Exactly one term contains a time derivative, and it is ``u_t`` to the first power."""
    t = system.variables[1]
    terms = []
    for mono, c in system.equation.raw_items():
        for s, e in mono:
            if s.kind == JET and s.base == system.field and t in s.derivs:
                terms.append((mono, s, e))
    line, col = getattr(system.lhs, "line", 0), getattr(system.lhs, "col", 0)
    if len(terms) != 1:
        raise PDESemanticError(f"equation is not in evolution form: {len(terms)} time-derivative terms", line, col)
    mono, s, e = terms[0]
    if s.derivs != (t,) or e != 1 or len(mono) != 1:
        raise PDESemanticError("equation is not in evolution form: time derivative must appear linearly as dt(u)", line, col)


def build_system(syn: SystemSyntax, metadata: str = "") -> PDESystem:
    _check_names(syn)
    try:
        system = PDESystem(syn.name, syn.field, syn.variables, syn.parameters, syn.lhs, syn.rhs, metadata=metadata)
        check_evolution_form(system)
    except (UnsupportedExponentForm, UnsupportedDeformation) as exc:
        raise PDESemanticError(str(exc), syn.line, syn.col) from None
    except ZeroDivisionError:
        raise PDESemanticError("division by zero", syn.line, syn.col) from None
    except Exception as exc:
        if type(exc).__name__ == "UnsupportedDivision":
            raise PDESemanticError(str(exc), syn.line, syn.col) from None
        raise
    return system


def parse_system(text, metadata: str = "") -> PDESystem:
    """Parse and validate a PDE definition (``str`` or ``bytes``)."""
    return build_system(parse_syntax(text), metadata)
