"""Syntax tree for PDE definition sources."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union


@dataclass(frozen=True)
class Num:
    value: int
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Imag:
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Name:
    id: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Jet:
    """Ordinary partial derivative written as ``u_xx``."""

    field: str
    derivs: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Dt:
    field: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Slot:
    """Deformed n-th spatial derivative ``D(u; eps)``, ``D2``, ``D3`` or ``Dn(u, n; eps)``."""

    order: int
    field: str
    exponent: "Node"
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


Node = Union[Num, Imag, Name, Jet, Dt, Slot, Neg, BinOp]

PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}
NEG_PREC = 3
ATOM_PREC = 5


def precedence(node: Node) -> int:
    if isinstance(node, BinOp):
        return PREC[node.op]
    if isinstance(node, Neg):
        return NEG_PREC
    return ATOM_PREC


def walk(node: Node):
    yield node
    if isinstance(node, BinOp):
        yield from walk(node.left)
        yield from walk(node.right)
    elif isinstance(node, Neg):
        yield from walk(node.operand)
    elif isinstance(node, Slot):
        yield from walk(node.exponent)
