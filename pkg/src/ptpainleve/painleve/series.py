"""Incremental Laurent series in phi, built as a graph of lazily evaluated nodes.

Every node represents ``sum_j c_j phi**(j + offset)``.  Coefficients are finalized
one index at a time.  While index ``j`` is open the unknown ``lambda_j`` enters
each node's current coefficient linearly, so nodes carry the pair ``(g, f)``
meaning ``g * lambda_j + f``.
"""

from __future__ import annotations

from typing import Callable

from ..symcore.expr import ZERO_EXPR, Expr

Pair = tuple[Expr, Expr]
_ZERO_PAIR: Pair = (ZERO_EXPR, ZERO_EXPR)


class Node:
    offset: int

    def __init__(self):
        self.final: list[Expr] = []
        self.cur: Pair = _ZERO_PAIR

    def compute(self, j: int) -> Pair:
        raise NotImplementedError

    def step(self, j: int) -> None:
        self.cur = self.compute(j)

    def finalize(self, value: Expr) -> None:
        g, f = self.cur
        self.final.append(f + g * value if g else f)


class FieldNode(Node):
    """The unknown series ``u = sum lambda_j phi**(j + alpha)``."""

    def __init__(self, alpha: int, lambda0: Expr):
        super().__init__()
        self.offset = alpha
        self.lambda0 = lambda0

    def compute(self, j: int) -> Pair:
        if j == 0:
            return (ZERO_EXPR, self.lambda0)
        return (Expr.const(1), ZERO_EXPR)


class ConstNode(Node):
    def __init__(self, value: Expr):
        super().__init__()
        self.offset = 0
        self.value = value

    def compute(self, j: int) -> Pair:
        return (ZERO_EXPR, self.value) if j == 0 else _ZERO_PAIR


class DerivNode(Node):
    """Total derivative of a series in one independent variable."""

    def __init__(self, src: Node, var: str, phi_var: Expr, diff: Callable[[Expr, str], Expr]):
        super().__init__()
        self.src = src
        self.var = var
        self.phi_var = phi_var
        self.diff = diff
        self.offset = src.offset - 1

    def compute(self, j: int) -> Pair:
        g, f = self.src.cur
        k = j + self.src.offset
        factor = self.phi_var * k
        g = g * factor if g else g
        f = f * factor if f else f
        if j >= 1:
            f = f + self.diff(self.src.final[j - 1], self.var)
        return (g, f)


class ProdNode(Node):
    def __init__(self, a: Node, b: Node):
        super().__init__()
        self.a = a
        self.b = b
        self.offset = a.offset + b.offset

    def compute(self, j: int) -> Pair:
        ga, fa = self.a.cur
        gb, fb = self.b.cur
        if j == 0:
            return (ZERO_EXPR, fa * fb)
        a0, b0 = self.a.final[0], self.b.final[0]
        g = ga * b0 + a0 * gb
        f = fa * b0 + a0 * fb
        af, bf = self.a.final, self.b.final
        for k in range(1, j):
            x, y = af[k], bf[j - k]
            if x and y:
                f = f + x * y
        return (g, f)
