"""Symbolic exponents: low-degree polynomials in exponent symbols (eps, mu, alpha, r).

Concrete exponents stay plain ``int``; anything symbolic is a :class:`SymExp`.
The helpers below accept either form and collapse constant results back to ``int``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

from gmpy2 import mpq

from ..errors import UnsupportedExponentForm

MAX_DEGREE = 2

Monom = tuple  # sorted tuple of variable names, repetition encodes powers


class SymExp:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monom, object]):
        clean = {}
        for mono, coef in terms.items():
            coef = mpq(coef) if not isinstance(coef, type(mpq(0))) else coef
            if coef:
                if len(mono) > MAX_DEGREE:
                    raise UnsupportedExponentForm(
                        f"exponent term of degree {len(mono)} exceeds supported degree {MAX_DEGREE}"
                    )
                clean[tuple(sorted(mono))] = clean.get(tuple(sorted(mono)), mpq(0)) + coef
        self.terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    @classmethod
    def var(cls, name: str) -> SymExp:
        return cls({(name,): 1})

    # structural ----------------------------------------------------------
    def variables(self) -> set[str]:
        return {v for mono in self.terms for v in mono}

    def constant(self) -> mpq:
        return self.terms.get((), mpq(0))

    def symbolic_part(self) -> SymExp:
        return SymExp({k: v for k, v in self.terms.items() if k})

    def is_constant(self) -> bool:
        return all(not k for k in self.terms)

    def degree(self) -> int:
        return max((len(k) for k in self.terms), default=0)

    def coefficient(self, name: str) -> Exponent:
        """Coefficient of ``name`` in a polynomial at most linear in it."""
        out = {}
        for mono, c in self.terms.items():
            n = mono.count(name)
            if n > 1:
                raise UnsupportedExponentForm(f"exponent is not linear in {name}: {self}")
            if n == 1:
                rest = list(mono)
                rest.remove(name)
                out[tuple(rest)] = c
        return collapse(SymExp(out))

    def without(self, name: str) -> Exponent:
        return collapse(SymExp({k: v for k, v in self.terms.items() if name not in k}))

    def sort_key(self):
        return tuple(sorted((k, (int(v.numerator), int(v.denominator))) for k, v in self.terms.items()))

    def __eq__(self, other):
        if isinstance(other, SymExp):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"SymExp({self})"

    def __str__(self):
        return format_exponent(self)


Exponent = Union[int, SymExp]


def _as_sym(e) -> SymExp:
    if isinstance(e, SymExp):
        return e
    return SymExp({(): e})


def collapse(e: SymExp):
    """Return ``int`` for integral constants, ``Fraction`` for other constants, else ``e``."""
    if not isinstance(e, SymExp):
        return e
    if e.is_constant():
        c = e.constant()
        if c.denominator == 1:
            return int(c)
        return Fraction(int(c.numerator), int(c.denominator))
    return e


def exp_add(a, b):
    if not isinstance(a, SymExp) and not isinstance(b, SymExp):
        return a + b
    sa, sb = _as_sym(a), _as_sym(b)
    terms = dict(sa.terms)
    for k, v in sb.terms.items():
        terms[k] = terms.get(k, mpq(0)) + v
    return collapse(SymExp(terms))


def exp_neg(a):
    if not isinstance(a, SymExp):
        return -a
    return SymExp({k: -v for k, v in a.terms.items()})


def exp_sub(a, b):
    return exp_add(a, exp_neg(b))


def exp_mul(a, b):
    if not isinstance(a, SymExp) and not isinstance(b, SymExp):
        return a * b
    sa, sb = _as_sym(a), _as_sym(b)
    terms: dict = {}
    for ka, va in sa.terms.items():
        for kb, vb in sb.terms.items():
            k = tuple(sorted(ka + kb))
            terms[k] = terms.get(k, mpq(0)) + va * vb
    return collapse(SymExp(terms))


def exp_is_zero(a) -> bool:
    if isinstance(a, SymExp):
        return not a.terms
    return a == 0


def exp_substitute(a, bindings: Mapping[str, object]):
    """Replace exponent variables by numbers or other exponents."""
    if not isinstance(a, SymExp):
        return a
    if not (a.variables() & set(bindings)):
        return a
    total = 0
    for mono, c in a.terms.items():
        term = collapse(SymExp({(): c}))
        for v in mono:
            term = exp_mul(term, bindings.get(v, SymExp.var(v)))
        total = exp_add(total, term)
    return total


def exp_evaluate(a, values: Mapping[str, object]) -> Fraction:
    r = exp_substitute(a, values)
    if isinstance(r, SymExp):
        raise ValueError(f"unbound exponent variables in {a}: {sorted(r.variables())}")
    return Fraction(r)


def exp_variables(a) -> set[str]:
    return a.variables() if isinstance(a, SymExp) else set()


def exp_sort_key(a):
    if isinstance(a, SymExp):
        return (1, a.sort_key())
    return (0, a)


def is_integral(a) -> bool:
    """True for ints and for symbolic exponents whose constant part is an integer."""
    if isinstance(a, SymExp):
        return True
    if isinstance(a, int):
        return True
    return Fraction(a).denominator == 1


def _fmt_coef(c: mpq) -> str:
    if c.denominator == 1:
        return str(int(c))
    return f"{int(c.numerator)}/{int(c.denominator)}"


def format_exponent(a) -> str:
    if not isinstance(a, SymExp):
        return str(a)
    if not a.terms:
        return "0"
    parts = []
    for mono in sorted(a.terms, key=lambda m: (-len(m), m)):
        c = a.terms[mono]
        name = "*".join(mono)
        if not mono:
            body = _fmt_coef(abs(c))
        elif abs(c) == 1:
            body = name
        else:
            body = f"{_fmt_coef(abs(c))}*{name}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f"{sign}{body}"
    return out


def compare_exponents(a, b, lower_bounds: Mapping[str, int] | None = None) -> int:
    """Sign of ``a - b`` valid for every integer assignment with ``var >= lower bound``.

    Exponent variables default to a lower bound of 1.  Raises
    :class:`AmbiguousOrdering` when the sign depends on the assignment.
    """
    from ..errors import AmbiguousOrdering

    d = exp_sub(a, b)
    if not isinstance(d, SymExp):
        return (d > 0) - (d < 0)
    lb = dict(lower_bounds or {})
    at_lower = exp_evaluate(d, {v: lb.get(v, 1) for v in d.variables()})
    sym = [c for k, c in d.terms.items() if k]
    if all(c >= 0 for c in sym) and all(lb.get(v, 1) >= 0 for v in d.variables()):
        if at_lower > 0:
            return 1
    if all(c <= 0 for c in sym) and all(lb.get(v, 1) >= 0 for v in d.variables()):
        if at_lower < 0:
            return -1
    raise AmbiguousOrdering(f"cannot order exponents {format_exponent(a)} and {format_exponent(b)}")
