"""Exception hierarchy shared by every layer of the engine."""

from __future__ import annotations


class PainleveError(Exception):
    """Base class for all engine errors."""


class UnsupportedExponentForm(PainleveError):
    """A symbolic exponent left the supported polynomial form."""


class CyclicSubstitution(PainleveError):
    """Substitution bindings refer to each other in a cycle."""


class AmbiguousOrdering(PainleveError):
    """Two symbolic exponents cannot be ordered under the parameter assumptions."""


class UnsupportedDeformation(PainleveError):
    """Deformation exponent outside the supported range."""


class UnsupportedDivision(PainleveError):
    """Division by an expression that is not a single monomial."""


class InternalInvariantViolation(PainleveError):
    """An internal consistency check failed; indicates an engine bug or bad input model."""


class PDEParseError(PainleveError):
    """Located diagnostic raised by the PDE definition parser."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class PDESemanticError(PDEParseError):
    """Well-formed input that violates a model invariant (undeclared symbol, not evolution form)."""
