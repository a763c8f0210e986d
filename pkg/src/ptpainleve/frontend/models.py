"""Built-in model templates."""

from __future__ import annotations

from .system import PDESystem, parse_system

BURGERS = """\
pde burgers {
  field u(x, t)
  param kappa: real
  param eps: int
  param mu: int
  equation: dt(u) + u*D(u; eps) = i*kappa*D2(u; mu)
}
"""

KDV = """\
pde kdv {
  field u(x, t)
  param eps: int
  param mu: int
  equation: dt(u) - 6*u*D(u; eps) + D3(u; mu) = 0
}
"""

BUILTINS = {
    "burgers": (BURGERS, "deformed Burgers equation u_t + u u_{x;eps} = i kappa u_{xx;mu}"),
    "kdv": (KDV, "deformed KdV equation u_t - 6 u u_{x;eps} + u_{xxx;mu} = 0"),
}


def builtin(name: str) -> PDESystem:
    text, meta = BUILTINS[name]
    return parse_system(text, meta)


def load_model(source: str) -> tuple[PDESystem, bytes]:
    """Builtin name or path to a definition file; also returns the source bytes."""
    if source in BUILTINS:
        text = BUILTINS[source][0]
        return builtin(source), text.encode()
    with open(source, "rb") as fh:
        data = fh.read()
    return parse_system(data, f"loaded from {source}"), data


def configure(system: PDESystem, epsilon, mu) -> PDESystem:
    """Bind deformation exponents; ``None`` keeps a generic symbol, ``mu`` defaults to ``epsilon``."""
    names = system.exponent_names
    if not names:
        return system
    if mu == "same":
        mu = epsilon
    values = {names[0]: epsilon}
    if len(names) > 1:
        values[names[1]] = mu
    return system.with_deformation(**values)
