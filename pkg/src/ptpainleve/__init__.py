"""Painlevé test engine for PT-symmetrically deformed evolution equations."""

__version__ = "1.0.0"
