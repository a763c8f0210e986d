"""Convergence diagnostics, travelling-wave reduction and numeric cross-checks."""

from .compare import NumericComparison, numeric_compare
from .diagnostics import (
    CONVERGENT, INCONCLUSIVE, BoundEntry, BoundReport, RootTestResult, bound_check, numerator_value, root_test,
    split_index, stirling_ratio,
)
from .rk import FEHLBERG78, IntegrationError, Solution, Tableau, integrate, order_condition_defects, rooted_trees
from .sequence import DEFAULT_PREC, CoefficientSequence, SequenceEntry, exact_at
from .travelling import V, Z, TravellingWaveODE, reduce_equation, reduce_travelling, solve_for_top, zeta_jet

__all__ = [
    "BoundEntry", "BoundReport", "CONVERGENT", "CoefficientSequence", "DEFAULT_PREC", "FEHLBERG78", "INCONCLUSIVE",
    "IntegrationError", "NumericComparison", "RootTestResult", "SequenceEntry", "Solution", "Tableau",
    "TravellingWaveODE", "V", "Z", "bound_check", "exact_at", "integrate", "numeric_compare", "numerator_value",
    "order_condition_defects", "reduce_equation", "reduce_travelling", "root_test", "rooted_trees", "solve_for_top",
    "split_index", "stirling_ratio", "zeta_jet",
]
