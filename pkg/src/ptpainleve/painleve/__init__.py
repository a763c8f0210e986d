"""Painlevé test engine: dominant balances through verdicts."""

from .balance import BalanceResult, balance_candidates, dominant_balance, leading_substitution
from .classify import DEFECTIVE, FAILS, PASSES, PainleveVerdict, classify, painleve_test
from .expansion import DEFAULT_ORDER, MODES, PainleveExpansion, ResonanceRecord, expand
from .oracle import residual, solved_orders_vanish
from .resonance import IntegralityRecord, QuadraticFactor, ResonanceReport, integrality_analysis, resonance_spectrum

__all__ = [
    "BalanceResult", "DEFAULT_ORDER", "DEFECTIVE", "FAILS", "IntegralityRecord", "MODES", "PASSES",
    "PainleveExpansion", "PainleveVerdict", "QuadraticFactor", "ResonanceRecord", "ResonanceReport",
    "balance_candidates", "classify", "dominant_balance", "expand", "integrality_analysis",
    "leading_substitution", "painleve_test", "residual", "resonance_spectrum", "solved_orders_vanish",
]
