"""Exact coefficient sequences of travelling-wave expansions and their high-precision magnitudes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import mpmath

from ..symcore.expr import Expr, substitute
from ..symcore.gauss import GaussRational
from ..symcore.symbols import parameter

DEFAULT_PREC = 150


def bind_values(bindings: Mapping[str, object]) -> dict:
    out = {}
    for k, v in bindings.items():
        if isinstance(v, complex):
            v = GaussRational(Fraction(v.real), Fraction(v.imag))
        elif isinstance(v, float):
            v = Fraction(v)
        out[parameter(k)] = Expr.const(v)
    return out


def exact_at(e: Expr, bindings: Mapping[str, object]) -> GaussRational:
    """Exact value of a coefficient at rational (or Gaussian-rational) parameter values."""
    v = substitute(e, bind_values(bindings))
    if not v.is_constant():
        raise ValueError(f"unbound symbols remain in {v}")
    return v.constant_value()


def to_mpc(z: GaussRational, prec: int = DEFAULT_PREC):
    with mpmath.workprec(prec):
        re = mpmath.mpf(int(z.re.numerator)) / int(z.re.denominator)
        im = mpmath.mpf(int(z.im.numerator)) / int(z.im.denominator)
        return mpmath.mpc(re, im)


@dataclass(frozen=True)
class SequenceEntry:
    n: int
    coefficient: Expr
    value: GaussRational

    def magnitude(self, prec: int = DEFAULT_PREC):
        with mpmath.workprec(prec):
            return abs(to_mpc(self.value, prec))

    def nth_root(self, prec: int = DEFAULT_PREC):
        with mpmath.workprec(prec):
            return self.magnitude(prec) ** (mpmath.mpf(1) / self.n)


@dataclass(frozen=True)
class CoefficientSequence:
    """``alpha_n`` = coefficient of ``phi**(n+1)``, ``n >= 1``, evaluated exactly at the bindings."""

    entries: tuple[SequenceEntry, ...]
    bindings: tuple[tuple[str, object], ...] = ()
    prec: int = field(default=DEFAULT_PREC, compare=False)

    @classmethod
    def from_expansion(cls, expansion, bindings: Mapping[str, object], prec: int = DEFAULT_PREC):
        entries = []
        for power, c in expansion.terms():
            n = power - 1
            if n < 1:
                continue
            entries.append(SequenceEntry(n, c, exact_at(c, bindings) if c else GaussRational(0)))
        return cls(tuple(entries), tuple(sorted(bindings.items())), prec)

    @classmethod
    def from_values(cls, values: Mapping[int, object], prec: int = DEFAULT_PREC):
        entries = []
        for n, v in sorted(values.items()):
            g = GaussRational.coerce(v)
            entries.append(SequenceEntry(n, Expr.const(g), g))
        return cls(tuple(entries), (), prec)

    def nonzero(self) -> list[SequenceEntry]:
        return [e for e in self.entries if e.value]

    def magnitudes(self) -> list[tuple[int, object]]:
        return [(e.n, e.magnitude(self.prec)) for e in self.entries]

    def nth_roots(self) -> list[tuple[int, object]]:
        return [(e.n, e.nth_root(self.prec)) for e in self.nonzero()]
