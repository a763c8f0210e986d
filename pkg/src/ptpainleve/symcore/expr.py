"""Canonical symbolic expressions.

An :class:`Expr` is a finite sum of terms ``coefficient * prod(symbol**exponent)``
with :class:`GaussRational` coefficients.  Exponents are ints (negative allowed,
so monomials are Laurent) or :class:`SymExp` polynomials in exponent symbols.
Numeric bases (``i`` and primes) only survive as factors when their exponent is
symbolic, and then only with zero constant part; everything else folds into the
coefficient.  Two expressions are equal iff their canonical term maps are equal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from gmpy2 import mpq

from ..errors import CyclicSubstitution, UnsupportedDivision, UnsupportedExponentForm
from .exponents import (
    SymExp,
    collapse,
    exp_add,
    exp_mul,
    exp_sort_key,
    exp_sub,
    exp_substitute,
    format_exponent,
)
from .gauss import I, ONE, ZERO, GaussRational, format_gauss, i_power
from .symbols import (
    COEFFICIENT,
    DIFFERENTIABLE,
    EXPONENT,
    INDEPENDENT,
    NUMERIC,
    Symbol,
    exponent_symbol,
    jet,
    numeric_base,
    pretty_name,
)

Monomial = tuple  # tuple[(Symbol, exponent), ...] sorted by symbol name
_EMPTY: Monomial = ()


def _numeric_value(sym: Symbol) -> GaussRational:
    return I if sym.name == "i" else GaussRational(int(sym.name))


def _fold(mono: Monomial):
    """Fold constant parts of numeric-base exponents into a coefficient factor."""
    factor = None
    out = []
    for sym, e in mono:
        if sym.kind != NUMERIC:
            out.append((sym, e))
            continue
        if isinstance(e, SymExp):
            c = e.constant()
            if c.denominator != 1:
                raise UnsupportedExponentForm(f"non-integral constant exponent on {sym.name}: {e}")
            c = int(c)
            if c:
                e = collapse(SymExp({k: v for k, v in e.terms.items() if k}))
            if c:
                val = i_power(c) if sym.name == "i" else _numeric_value(sym) ** c
                factor = val if factor is None else factor * val
            out.append((sym, e))
        else:
            val = i_power(e) if sym.name == "i" else _numeric_value(sym) ** e
            factor = val if factor is None else factor * val
    if factor is None:
        return mono, None
    return tuple(out), factor


def _has_numeric(mono: Monomial) -> bool:
    for sym, _ in mono:
        if sym.kind == NUMERIC:
            return True
    return False


def _mono_mul(a: Monomial, b: Monomial):
    if not a:
        return b, None
    if not b:
        return a, None
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    numeric = False
    while i < la and j < lb:
        sa, ea = a[i]
        sb, eb = b[j]
        if sa is sb or sa.name == sb.name:
            e = ea + eb if (type(ea) is int and type(eb) is int) else exp_add(ea, eb)
            if not (type(e) is int and e == 0) and not (isinstance(e, SymExp) and not e.terms):
                out.append((sa, e))
                if sa.kind == NUMERIC:
                    numeric = True
            i += 1
            j += 1
        elif sa.name < sb.name:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    if i < la:
        out.extend(a[i:])
    if j < lb:
        out.extend(b[j:])
    mono = tuple(out)
    if numeric:
        return _fold(mono)
    return mono, None


def _mono_key(mono: Monomial):
    return tuple((s.name, exp_sort_key(e)) for s, e in mono)


def _check_exponent(e):
    if isinstance(e, SymExp):
        return e
    if isinstance(e, int):
        return e
    f = Fraction(e)
    if f.denominator != 1:
        raise UnsupportedExponentForm(f"non-integral exponent {f}")
    return int(f)


class Expr:
    """Immutable canonical sum of monomial terms."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[Monomial, GaussRational] | None = None):
        self._t = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> Expr:
        obj = object.__new__(cls)
        obj._t = terms
        obj._hash = None
        return obj

    # constructors ---------------------------------------------------------
    @classmethod
    def const(cls, value) -> Expr:
        c = GaussRational.coerce(value)
        return cls._wrap({_EMPTY: c} if c else {})

    @classmethod
    def sym(cls, symbol: Symbol, exponent=1) -> Expr:
        exponent = _check_exponent(exponent)
        if exponent == 0:
            return ONE_EXPR
        mono, factor = _fold(((symbol, exponent),)) if symbol.kind == NUMERIC else (((symbol, exponent),), None)
        return cls._wrap({mono: factor if factor is not None else ONE})

    @classmethod
    def monomial(cls, coef, factors: Iterable[tuple[Symbol, object]]) -> Expr:
        out = cls.const(coef)
        for s, e in factors:
            out = out * cls.sym(s, e)
        return out

    @classmethod
    def coerce(cls, value) -> Expr:
        if isinstance(value, Expr):
            return value
        if isinstance(value, Symbol):
            return cls.sym(value)
        return cls.const(value)

    # inspection -----------------------------------------------------------
    def items(self):
        """Terms in canonical order."""
        return sorted(self._t.items(), key=lambda kv: _mono_key(kv[0]))

    def raw_items(self):
        return self._t.items()

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and _EMPTY in self._t)

    def constant_value(self) -> GaussRational:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._t.get(_EMPTY, ZERO)

    def constant_term(self) -> GaussRational:
        return self._t.get(_EMPTY, ZERO)

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def as_monomial(self) -> tuple[GaussRational, Monomial]:
        if len(self._t) != 1:
            raise UnsupportedDivision(f"expected a single monomial, got {len(self._t)} terms: {self}")
        (m, c), = self._t.items()
        return c, m

    def free_symbols(self) -> set[Symbol]:
        out = set()
        for m in self._t:
            for s, e in m:
                out.add(s)
                if isinstance(e, SymExp):
                    out.update(exponent_symbol(v) for v in e.variables())
        return out

    def exponent_of(self, sym: Symbol, mono: Monomial):
        for s, e in mono:
            if s == sym:
                return e
        return 0

    def degree_in(self, sym: Symbol) -> int:
        best = 0
        for m in self._t:
            e = self.exponent_of(sym, m)
            if isinstance(e, SymExp):
                raise UnsupportedExponentForm(f"symbolic power of {sym} has no integer degree")
            best = max(best, e)
        return best

    # arithmetic -----------------------------------------------------------
    def __add__(self, other) -> Expr:
        if not isinstance(other, Expr):
            other = Expr.coerce(other)
        if not other._t:
            return self
        if not self._t:
            return other
        out = dict(self._t)
        for m, c in other._t.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Expr._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> Expr:
        return Expr._wrap({m: -c for m, c in self._t.items()})

    def __sub__(self, other) -> Expr:
        if not isinstance(other, Expr):
            other = Expr.coerce(other)
        return self + (-other)

    def __rsub__(self, other) -> Expr:
        return Expr.coerce(other) - self

    def scale(self, c) -> Expr:
        c = GaussRational.coerce(c)
        if not c:
            return ZERO_EXPR
        if c == ONE:
            return self
        return Expr._wrap({m: v * c for m, v in self._t.items()})

    def __mul__(self, other) -> Expr:
        if not isinstance(other, Expr):
            if isinstance(other, Symbol):
                other = Expr.sym(other)
            else:
                return self.scale(other)
        if not self._t or not other._t:
            return ZERO_EXPR
        out: dict = {}
        for m1, c1 in self._t.items():
            for m2, c2 in other._t.items():
                m, f = _mono_mul(m1, m2)
                c = c1 * c2
                if f is not None:
                    c = c * f
                v = out.get(m)
                out[m] = c if v is None else v + c
        return Expr._wrap({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> Expr:
        if not isinstance(other, Expr):
            other = Expr.coerce(other)
        c, m = other.as_monomial()
        inv = Expr._wrap({tuple((s, _neg_exp(e)) for s, e in m): c.inverse()})
        return self * inv

    def __pow__(self, n) -> Expr:
        if isinstance(n, SymExp):
            return self._sym_pow(n)
        n = _check_exponent(n)
        if isinstance(n, SymExp):
            return self._sym_pow(n)
        if n == 0:
            return ONE_EXPR
        if n < 0:
            c, m = self.as_monomial()
            return self._mono_pow(c, m, n)
        if len(self._t) == 1:
            (m, c), = self._t.items()
            return self._mono_pow(c, m, n)
        result = ONE_EXPR
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    @staticmethod
    def _mono_pow(c: GaussRational, m: Monomial, n: int) -> Expr:
        mono = tuple((s, exp_mul(e, n)) for s, e in m)
        mono, f = _fold(mono) if _has_numeric(mono) else (mono, None)
        coef = c ** n
        if f is not None:
            coef = coef * f
        return Expr._wrap({mono: coef})

    def _sym_pow(self, e: SymExp) -> Expr:
        if not self._t:
            raise UnsupportedExponentForm("zero raised to a symbolic power")
        if len(self._t) != 1:
            raise UnsupportedExponentForm(f"cannot raise a sum to the symbolic power {e}: {self}")
        (m, c), = self._t.items()
        out = gauss_symbolic_power(c, e)
        mono = tuple((s, exp_mul(x, e)) for s, x in m)
        return out * Expr._wrap({mono: ONE})

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Expr):
            return self._t == other._t
        if isinstance(other, (int, Fraction, GaussRational)):
            return self._t == Expr.const(other)._t
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # rendering ------------------------------------------------------------
    def __str__(self):
        return format_expr(self)

    def __repr__(self):
        return f"Expr({format_expr(self)!r})"

    def pretty(self) -> str:
        return format_expr(self, pretty=True)


def _neg_exp(e):
    if isinstance(e, SymExp):
        return SymExp({k: -v for k, v in e.terms.items()})
    return -e


ZERO_EXPR = Expr._wrap({})
ONE_EXPR = Expr._wrap({_EMPTY: ONE})
I_EXPR = Expr._wrap({_EMPTY: I})


_SMALL_PRIMES_LIMIT = 10**6


def _factor_int(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        if p > _SMALL_PRIMES_LIMIT:
            raise UnsupportedExponentForm(f"cannot factor {n} for a symbolic power")
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def gauss_symbolic_power(c: GaussRational, e: SymExp) -> Expr:
    """``c**e`` for real or purely imaginary ``c`` as a product of numeric-base factors."""
    if c == ONE:
        return ONE_EXPR
    if c.re and c.im:
        raise UnsupportedExponentForm(f"symbolic power of a genuinely complex number {c}")
    if c.im:
        mag = c.im
        ipow = 1 if mag > 0 else 3
    else:
        mag = c.re
        ipow = 0 if mag > 0 else 2
    mag = abs(mag)
    factors: list[tuple[Symbol, object]] = []
    if ipow:
        factors.append((numeric_base("i"), exp_mul(e, ipow)))
    for p, k in _factor_int(int(mag.numerator)).items():
        factors.append((numeric_base(str(p)), exp_mul(e, k)))
    for p, k in _factor_int(int(mag.denominator)).items():
        factors.append((numeric_base(str(p)), exp_mul(e, -k)))
    factors.sort(key=lambda f: f[0].name)
    merged: list = []
    for s, x in factors:
        if merged and merged[-1][0] == s:
            merged[-1] = (s, exp_add(merged[-1][1], x))
        else:
            merged.append((s, x))
    mono, f = _fold(tuple(merged))
    return Expr._wrap({mono: f if f is not None else ONE})


# ---------------------------------------------------------------------------
# exponent <-> expression conversion


def exponent_to_expr(e) -> Expr:
    if not isinstance(e, SymExp):
        return Expr.const(Fraction(e))
    out = ZERO_EXPR
    for mono, c in e.terms.items():
        term = Expr.const(Fraction(int(c.numerator), int(c.denominator)))
        for v in mono:
            term = term * Expr.sym(exponent_symbol(v))
        out = out + term
    return out


def expr_to_exponent(x: Expr):
    """Inverse of :func:`exponent_to_expr`; only real rational polynomials in exponent symbols."""
    terms: dict = {}
    for mono, c in x.raw_items():
        if c.im:
            raise UnsupportedExponentForm(f"complex coefficient in exponent: {x}")
        names: list[str] = []
        for s, e in mono:
            if s.kind != EXPONENT or not isinstance(e, int) or e < 0:
                raise UnsupportedExponentForm(f"not an exponent expression: {x}")
            names.extend([s.name] * e)
        terms[tuple(sorted(names))] = c.re
    return collapse(SymExp(terms))


# ---------------------------------------------------------------------------
# normalize: raw trees -> canonical Expr


def normalize(raw) -> Expr:
    """Canonicalize a raw tree.

    Accepted nodes: ``Expr``, ``Symbol``, ints, Fractions, GaussRationals, the
    string ``"i"``, and tuples ``("+", a, b, ...)``, ``("*", a, b, ...)``,
    ``("-", a)`` (negation), ``("/", a, b)`` and ``("^", base, exponent)``.
    Exponents are ints or raw trees over exponent symbols.
    """
    if isinstance(raw, Expr):
        return raw
    if isinstance(raw, Symbol):
        return Expr.sym(raw)
    if isinstance(raw, (int, Fraction, GaussRational)):
        return Expr.const(raw)
    if isinstance(raw, str):
        if raw == "i":
            return I_EXPR
        raise ValueError(f"unknown raw leaf {raw!r}")
    if isinstance(raw, SymExp):
        return exponent_to_expr(raw)
    if isinstance(raw, tuple) and raw:
        op, *args = raw
        if op == "+":
            out = ZERO_EXPR
            for a in args:
                out = out + normalize(a)
            return out
        if op == "*":
            out = ONE_EXPR
            for a in args:
                out = out * normalize(a)
            return out
        if op == "-" and len(args) == 1:
            return -normalize(args[0])
        if op == "-" and len(args) == 2:
            return normalize(args[0]) - normalize(args[1])
        if op == "/" and len(args) == 2:
            return normalize(args[0]) / normalize(args[1])
        if op == "^" and len(args) == 2:
            base = normalize(args[0])
            e = args[1]
            if not isinstance(e, (int, SymExp)):
                e = expr_to_exponent(normalize(e))
            if isinstance(e, Fraction):
                raise UnsupportedExponentForm(f"non-integral exponent {e}")
            return base ** e
    raise ValueError(f"malformed raw expression: {raw!r}")


# ---------------------------------------------------------------------------
# differentiation


def _symbol_derivative(sym: Symbol, var: str, mode: str, rules) -> Expr:
    if rules:
        r = rules.get((sym.name, var))
        if r is not None:
            return r
    kind = sym.kind
    if kind == INDEPENDENT:
        return ONE_EXPR if sym.name == var else ZERO_EXPR
    if kind not in DIFFERENTIABLE:
        return ZERO_EXPR
    deps = sym.deps
    if kind == COEFFICIENT:
        if mode == "reduced":
            deps = ("t",)
        elif mode == "travelling":
            deps = ()
    if var not in deps:
        return ZERO_EXPR
    if rules:
        base_rule = rules.get((sym.base, var)) if sym.derivs else None
        if base_rule is not None:
            return differentiate_along(base_rule, sym.derivs, mode, rules)
    return Expr.sym(sym.derivative(var))


def differentiate_along(e: Expr, derivs, mode: str = "general", rules=None) -> Expr:
    for v in derivs:
        e = differentiate(e, v, 1, mode, rules)
    return e


def differentiate(e: Expr, var: str, n: int = 1, mode: str = "general", rules=None) -> Expr:
    """n-th total derivative with respect to an independent variable.

    ``mode="reduced"`` makes series coefficients functions of ``t`` only and
    ``mode="travelling"`` makes them constants.
    ``rules`` maps ``(symbol_name, var)`` to an explicit derivative, e.g.
    ``{("phi", "x"): 1, ("phi", "t"): -xi_t}`` for ``phi = x - xi(t)``.
    """
    if n < 1:
        raise ValueError("derivative order must be >= 1")
    if rules:
        rules = {k: Expr.coerce(v) for k, v in rules.items()}
    for _ in range(n):
        e = _diff_once(e, var, mode, rules)
    return e


def _diff_once(e: Expr, var: str, mode: str, rules) -> Expr:
    out: dict = {}
    cache: dict = {}
    for mono, coef in e.raw_items():
        for idx, (sym, ex) in enumerate(mono):
            ds = cache.get(sym)
            if ds is None:
                ds = _symbol_derivative(sym, var, mode, rules)
                cache[sym] = ds
            if not ds._t:
                continue
            rest = mono[:idx] + mono[idx + 1:]
            lowered = exp_sub(ex, 1) if isinstance(ex, SymExp) else ex - 1
            if not (isinstance(lowered, int) and lowered == 0):
                rest, f = _mono_mul(rest, ((sym, lowered),))
            else:
                f = None
            if isinstance(ex, SymExp):
                factor = exponent_to_expr(ex)
            else:
                factor = Expr._wrap({_EMPTY: GaussRational(ex)})
            base = Expr._wrap({rest: coef if f is None else coef * f})
            term = base * factor * ds
            for m, c in term._t.items():
                v = out.get(m)
                out[m] = c if v is None else v + c
    return Expr._wrap({m: c for m, c in out.items() if c})


# ---------------------------------------------------------------------------
# substitution


def _dependency_cycle(graph: dict) -> list | None:
    state: dict = {}
    stack: list = []

    def visit(node):
        state[node] = 1
        stack.append(node)
        for nxt in graph.get(node, ()):
            if nxt == node:
                continue
            if state.get(nxt) == 1:
                return stack[stack.index(nxt):] + [nxt]
            if state.get(nxt) is None:
                found = visit(nxt)
                if found:
                    return found
        stack.pop()
        state[node] = 2
        return None

    for node in graph:
        if state.get(node) is None:
            found = visit(node)
            if found:
                return found
    return None


def substitute(e: Expr, bindings: Mapping, induce_jets: bool = False, mode: str = "general", rules=None) -> Expr:
    """Simultaneous substitution ``symbol -> Expr``.

    With ``induce_jets`` a binding for a base field or function (``phi``,
    ``xi``, ``u``) also binds every derivative symbol of that base to the
    matching derivative of the bound value.  Exponent symbols are replaced
    inside symbolic exponents as well.
    """
    table: dict[Symbol, Expr] = {}
    for k, v in bindings.items():
        v = Expr.coerce(v)
        if v == Expr.sym(k):
            continue
        table[k] = v

    bases = {}
    if induce_jets:
        for k, v in table.items():
            if k.kind in DIFFERENTIABLE and not k.derivs:
                bases[k.base] = v
    keys_by_name = {k.name for k in table}
    graph = {}
    for k, v in table.items():
        deps = set()
        for s in v.free_symbols():
            if s.name in keys_by_name or (s.kind in DIFFERENTIABLE and s.base in bases):
                deps.add(s.base if (s.kind in DIFFERENTIABLE and s.base in bases) else s.name)
        graph[k.base if (k.kind in DIFFERENTIABLE and k.base in bases and not k.derivs) else k.name] = deps
    cycle = _dependency_cycle(graph)
    if cycle:
        raise CyclicSubstitution(" -> ".join(cycle))

    exp_bind = {}
    for k, v in table.items():
        if k.kind == EXPONENT:
            exp_bind[k.name] = expr_to_exponent(v)

    induced: dict[Symbol, Expr] = {}
    pow_cache: dict = {}
    out = ZERO_EXPR
    acc: dict = {}
    for mono, coef in e.raw_items():
        term_mono: list = []
        pending: list[Expr] = []
        for sym, ex in mono:
            if exp_bind and isinstance(ex, SymExp):
                ex = exp_substitute(ex, exp_bind)
                ex = _check_exponent(ex)
            val = table.get(sym)
            if val is None and bases and sym.kind in DIFFERENTIABLE and sym.derivs and sym.base in bases:
                val = induced.get(sym)
                if val is None:
                    val = differentiate_along(bases[sym.base], sym.derivs, mode, rules)
                    induced[sym] = val
            if val is None:
                if isinstance(ex, int) and ex == 0:
                    continue
                term_mono.append((sym, ex))
                continue
            key = (sym, ex)
            p = pow_cache.get(key)
            if p is None:
                p = val ** ex
                pow_cache[key] = p
            pending.append(p)
        term = Expr.monomial(coef, term_mono) if term_mono else Expr.const(coef)
        for p in pending:
            term = term * p
        for m, c in term._t.items():
            v = acc.get(m)
            acc[m] = c if v is None else v + c
    out = Expr._wrap({m: c for m, c in acc.items() if c})
    return out


# ---------------------------------------------------------------------------
# collection by powers


PHI = jet("phi")


def collect_phi_powers(e: Expr, phi: Symbol = PHI) -> dict:
    """Partition ``e`` by the exponent of ``phi``; values no longer contain ``phi``."""
    groups: dict = {}
    for mono, coef in e.raw_items():
        power = 0
        rest = mono
        for idx, (s, ex) in enumerate(mono):
            if s == phi:
                power = ex
                rest = mono[:idx] + mono[idx + 1:]
                break
        g = groups.setdefault(power, {})
        v = g.get(rest)
        g[rest] = coef if v is None else v + coef
    return {k: Expr._wrap({m: c for m, c in g.items() if c}) for k, g in groups.items()}


def collect(e: Expr, sym: Symbol) -> dict:
    return collect_phi_powers(e, sym)


def from_powers(groups: Mapping, phi: Symbol = PHI) -> Expr:
    out = ZERO_EXPR
    for power, coef in groups.items():
        out = out + coef * Expr.sym(phi, power) if not (isinstance(power, int) and power == 0) else out + coef
    return out


def monomial_gcd(e: Expr) -> Expr:
    """Largest monomial dividing every term, comparing exponents that differ by integers.

    Factors whose exponents are incomparable (differ by a symbolic amount) are left out.
    The coefficient of the result is 1.
    """
    items = list(e.raw_items())
    if not items:
        return ONE_EXPR
    common: dict | None = None
    for mono, _ in items:
        d = dict(mono)
        if common is None:
            common = {s: ex for s, ex in mono}
            continue
        for s in list(common):
            ex = d.get(s, 0)
            diff = exp_sub(common[s], ex)
            if isinstance(diff, SymExp):
                del common[s]
                continue
            if diff > 0:
                common[s] = ex
        for s, ex in mono:
            if s not in common:
                continue
    # symbols missing from some term have min exponent 0 only when comparable
    result = []
    for s, ex in (common or {}).items():
        present_everywhere = all(any(t == s for t, _ in mono) for mono, _ in items)
        if not present_everywhere:
            if isinstance(ex, SymExp) or ex > 0:
                continue
        if isinstance(ex, int) and ex == 0:
            continue
        result.append((s, ex))
    result.sort(key=lambda f: f[0].name)
    return Expr._wrap({tuple(result): ONE})


def coefficients_in(e: Expr, sym: Symbol) -> dict[int, Expr]:
    """Polynomial coefficients of ``e`` in ``sym`` (integer powers only)."""
    out = {}
    for k, v in collect_phi_powers(e, sym).items():
        if isinstance(k, SymExp):
            raise UnsupportedExponentForm(f"symbolic power of {sym} in {e}")
        out[k] = v
    return out


def evaluate(e: Expr, values: Mapping[Symbol, object], number=complex):
    """Numeric value; ``values`` maps every free symbol to a number of type ``number``."""
    total = number(0)
    for mono, c in e.raw_items():
        term = number(c.re.numerator) / number(c.re.denominator) if not c.im else (
            number(c.re.numerator) / number(c.re.denominator)
            + number(c.im.numerator) / number(c.im.denominator) * number(1j)
        )
        for s, ex in mono:
            if isinstance(ex, SymExp):
                raise UnsupportedExponentForm("cannot evaluate a symbolic exponent numerically")
            term = term * values[s] ** ex
        total = total + term
    return total


# ---------------------------------------------------------------------------
# rendering


def _fmt_coef(c: GaussRational, has_factors: bool) -> str:
    if not has_factors:
        return format_gauss(c)
    if c == ONE:
        return ""
    if c == -ONE:
        return "-"
    txt = format_gauss(c)
    if c.re and c.im:
        return f"({txt})*"
    return txt + "*"


def _fmt_factor(s: Symbol, e, pretty: bool) -> str:
    name = pretty_name(s) if pretty else s.name
    if isinstance(e, SymExp):
        return f"{name}^({format_exponent(e)})"
    if e == 1:
        return name
    return f"{name}^{e}"


def format_term(mono: Monomial, coef: GaussRational, pretty: bool = False) -> str:
    factors = "*".join(_fmt_factor(s, e, pretty) for s, e in mono)
    return _fmt_coef(coef, bool(mono)) + factors


def format_expr(e: Expr, pretty: bool = False) -> str:
    if not e._t:
        return "0"
    out = ""
    for idx, (mono, coef) in enumerate(e.items()):
        t = format_term(mono, coef, pretty)
        if idx == 0:
            out = t
        elif t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out


def conjugate(e: Expr) -> Expr:
    """Complex conjugation with every non-numeric symbol treated as real."""
    out = ZERO_EXPR
    for mono, c in e.raw_items():
        factors = []
        extra = ONE_EXPR
        for s, ex in mono:
            if s.kind == NUMERIC and s.name == "i":
                extra = extra * Expr.sym(s, _neg_exp(ex))
            else:
                factors.append((s, ex))
        out = out + Expr._wrap({tuple(factors): c.conjugate()}) * extra
    return out
