"""Exact Gaussian rationals a + ib with a, b in Q."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

_ZERO = mpq(0)
_ONE = mpq(1)


def _q(value) -> mpq:
    if isinstance(value, mpq):
        return value
    if isinstance(value, (int, Fraction)):
        return mpq(value)
    if isinstance(value, Rational):
        return mpq(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        return mpq(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")


class GaussRational:
    """Immutable complex number with arbitrary-precision rational parts.

    Both parts are kept as ``gmpy2.mpq`` which is always in lowest terms with a
    positive denominator.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _q(re))
        object.__setattr__(self, "im", _q(im))

    @classmethod
    def _raw(cls, re: mpq, im: mpq) -> GaussRational:
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def coerce(cls, value) -> GaussRational:
        if isinstance(value, GaussRational):
            return value
        if isinstance(value, complex):
            raise TypeError("floating complex values are not exact")
        return cls._raw(_q(value), _ZERO)

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GaussRational):
            try:
                other = GaussRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational._raw(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, GaussRational):
            try:
                other = GaussRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussRational.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussRational):
            try:
                other = GaussRational.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            if not d:
                return GaussRational._raw(a * c, _ZERO)
            return GaussRational._raw(a * c, a * d)
        if not d:
            return GaussRational._raw(a * c, b * c)
        return GaussRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, GaussRational):
            try:
                other = GaussRational.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussRational.coerce(other) * self.inverse()

    def inverse(self) -> GaussRational:
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("GaussRational division by zero")
            return GaussRational._raw(1 / a, _ZERO)
        n = a * a + b * b
        return GaussRational._raw(a / n, -b / n)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> GaussRational:
        return GaussRational._raw(self.re, -self.im)

    def norm(self) -> mpq:
        return self.re * self.re + self.im * self.im

    # predicates -----------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def is_integer(self) -> bool:
        return not self.im and self.re.denominator == 1

    def __eq__(self, other):
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction, type(_ZERO))):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # conversion -----------------------------------------------------------
    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def as_fraction(self) -> Fraction:
        if self.im:
            raise ValueError(f"{self} is not real")
        return Fraction(int(self.re.numerator), int(self.re.denominator))

    def __repr__(self):
        return f"GaussRational({self})"

    def __str__(self):
        return format_gauss(self)


def _fmt_q(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_gauss(z: GaussRational) -> str:
    """Decimal-free text form ``p/q``, ``r/s*i`` or ``p/q+r/s*i``."""
    if not z.im:
        return _fmt_q(z.re)
    if z.im == 1:
        im = "i"
    elif z.im == -1:
        im = "-i"
    else:
        im = f"{_fmt_q(z.im)}*i"
    if not z.re:
        return im
    sep = "" if im.startswith("-") else "+"
    return f"{_fmt_q(z.re)}{sep}{im}"


_GAUSS_RE = re.compile(r"(?P<re>[+-]?\d+(?:/\d+)?)?(?P<im>[+-]?(?:\d+(?:/\d+)?\*)?i)?")


def _signed_q(text: str) -> mpq:
    return mpq(text[1:]) if text.startswith("+") else mpq(text)


def parse_gauss(text: str) -> GaussRational:
    """Inverse of :func:`format_gauss`."""
    s = text.strip()
    m = _GAUSS_RE.fullmatch(s)
    if not s or not m or (m["re"] and m["im"] and m["im"][0] not in "+-"):
        raise ValueError(f"not a Gaussian rational literal: {text!r}")
    re_part = _signed_q(m["re"]) if m["re"] else _ZERO
    im_txt = (m["im"] or "").rstrip("i").rstrip("*")
    if m["im"] is None:
        im_part = _ZERO
    elif im_txt in ("", "+"):
        im_part = _ONE
    elif im_txt == "-":
        im_part = -_ONE
    else:
        im_part = _signed_q(im_txt)
    return GaussRational._raw(re_part, im_part)


ZERO = GaussRational._raw(_ZERO, _ZERO)
ONE = GaussRational._raw(_ONE, _ZERO)
I = GaussRational._raw(_ZERO, _ONE)


def i_power(k: int) -> GaussRational:
    return (ONE, I, -ONE, -I)[k % 4]
