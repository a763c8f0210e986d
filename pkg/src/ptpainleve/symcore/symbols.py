"""Symbols and their kinds.

Symbols are interned by name, so equality and hashing only look at the name.
Jet symbols (derivatives of a field) carry their base name and the sorted tuple
of differentiation variables, e.g. ``phi_xt`` is ``base='phi', derivs=('x','t')``.
"""

from __future__ import annotations

import re

INDEPENDENT = "independent"
PARAMETER = "parameter"
EXPONENT = "exponent"
FUNCTION = "function"  # function of t only: xi and its derivatives
JET = "jet"  # fields and their partial derivatives: u, phi, zeta
COEFFICIENT = "coefficient"  # series coefficients lambda_k
PROBE = "probe"  # resonance probe theta
NUMERIC = "numeric"  # numeric base (i, primes) carrying a symbolic exponent

KINDS = (INDEPENDENT, PARAMETER, EXPONENT, FUNCTION, JET, COEFFICIENT, PROBE, NUMERIC)
DIFFERENTIABLE = (FUNCTION, JET, COEFFICIENT)

VAR_ORDER = {"x": 0, "z": 1, "t": 2}

_REGISTRY: dict[str, "Symbol"] = {}


class Symbol:
    __slots__ = ("name", "kind", "base", "derivs", "deps", "_hash")

    def __init__(self, name, kind, base=None, derivs=(), deps=()):
        self.name = name
        self.kind = kind
        self.base = base
        self.derivs = derivs
        self.deps = deps
        self._hash = hash(name)

    def __eq__(self, other):
        return self is other or (isinstance(other, Symbol) and other.name == self.name)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.name < other.name

    def __repr__(self):
        return f"Symbol({self.name!r}, {self.kind})"

    def __str__(self):
        return self.name

    def __reduce__(self):
        return (_restore, (self.name, self.kind, self.base, self.derivs, self.deps))

    @property
    def order(self) -> int:
        return len(self.derivs)

    def count(self, var: str) -> int:
        return self.derivs.count(var)

    def derivative(self, var: str) -> Symbol:
        derivs = tuple(sorted(self.derivs + (var,), key=VAR_ORDER.get))
        return _intern(_jet_name(self.base, derivs), self.kind, self.base, derivs, self.deps)

    def base_symbol(self) -> Symbol:
        return _intern(self.base, self.kind, self.base, (), self.deps)


def _restore(name, kind, base, derivs, deps):
    return _intern(name, kind, base, derivs, deps)


def _intern(name, kind, base=None, derivs=(), deps=()) -> Symbol:
    sym = _REGISTRY.get(name)
    if sym is None:
        sym = Symbol(name, kind, base, tuple(derivs), tuple(deps))
        _REGISTRY[name] = sym
    elif sym.kind != kind:
        raise ValueError(f"symbol {name!r} already registered with kind {sym.kind}, not {kind}")
    return sym


def _jet_name(base: str, derivs: tuple) -> str:
    return base if not derivs else f"{base}_{''.join(derivs)}"


def independent(name: str) -> Symbol:
    return _intern(name, INDEPENDENT)


def parameter(name: str) -> Symbol:
    return _intern(name, PARAMETER)


def exponent_symbol(name: str) -> Symbol:
    return _intern(name, EXPONENT)


def numeric_base(name: str) -> Symbol:
    return _intern(name, NUMERIC)


def probe(name: str = "theta") -> Symbol:
    return _intern(name, PROBE)


def jet(base: str, derivs=(), deps=("x", "t")) -> Symbol:
    derivs = tuple(sorted(derivs, key=VAR_ORDER.get))
    return _intern(_jet_name(base, derivs), JET, base, derivs, deps)


def function_of_t(base: str = "xi", order: int = 0) -> Symbol:
    derivs = ("t",) * order
    return _intern(_jet_name(base, derivs), FUNCTION, base, derivs, ("t",))


def coefficient(k: int, derivs=()) -> Symbol:
    base = f"lambda{k}"
    derivs = tuple(sorted(derivs, key=VAR_ORDER.get))
    return _intern(_jet_name(base, derivs), COEFFICIENT, base, derivs, ("x", "t"))


_JET_RE = re.compile(r"^(?P<base>[A-Za-z]+)_(?P<d>[xtz]+)$")
_COEF_RE = re.compile(r"^(?P<base>lambda\d+)(?:_(?P<d>[xt]+))?$")
_KNOWN_EXPONENTS = {"eps", "mu", "alpha", "r"}
_KNOWN_JETS = {"u": ("x", "t"), "phi": ("x", "t"), "zeta": ("z",)}


def symbol_from_name(name: str) -> Symbol:
    """Resolve a symbol by name, inferring its kind from naming conventions if unseen."""
    sym = _REGISTRY.get(name)
    if sym is not None:
        return sym
    if name in ("x", "t", "z"):
        return independent(name)
    if name in _KNOWN_EXPONENTS:
        return exponent_symbol(name)
    if name == "theta":
        return probe(name)
    if name == "i" or name.isdigit():
        return numeric_base(name)
    m = _COEF_RE.match(name)
    if m:
        return coefficient(int(m.group("base")[6:]), tuple(m.group("d") or ()))
    if name == "xi":
        return function_of_t("xi", 0)
    m = _JET_RE.match(name)
    if m:
        base, d = m.group("base"), tuple(m.group("d"))
        if base == "xi" and set(d) == {"t"}:
            return function_of_t("xi", len(d))
        return jet(base, d, _KNOWN_JETS.get(base, ("x", "t")))
    if name in _KNOWN_JETS:
        return jet(name, (), _KNOWN_JETS[name])
    return parameter(name)


_GREEK = {
    "kappa": "κ", "omega": "ω", "eps": "ε", "mu": "μ", "alpha": "α", "theta": "ϑ",
    "phi": "φ", "xi": "ξ", "zeta": "ζ", "sigma": "σ",
}


def pretty_name(sym: Symbol) -> str:
    """Human-oriented rendering: xi_tt -> ξ″, lambda2_t -> λ2′, phi_xx -> φ_xx."""
    if sym.kind == FUNCTION:
        base = _GREEK.get(sym.base, sym.base)
        n = sym.order
        return base + ("′" * n if n <= 3 else f"^({n})")
    if sym.kind == COEFFICIENT:
        k = sym.base[6:]
        return f"λ{k}" + ("_" + "".join(sym.derivs) if sym.derivs else "")
    if sym.kind == JET:
        base = _GREEK.get(sym.base, sym.base)
        return base + ("_" + "".join(sym.derivs) if sym.derivs else "")
    return _GREEK.get(sym.name, sym.name)
