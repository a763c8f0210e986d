"""Final Painlevé verdict."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .balance import BalanceResult, dominant_balance
from .expansion import PainleveExpansion, expand
from .resonance import ResonanceReport, resonance_spectrum

PASSES = "PASSES"
DEFECTIVE = "DEFECTIVE"
FAILS = "FAILS"


@dataclass(frozen=True)
class PainleveVerdict:
    classification: str
    justification: tuple[str, ...]
    free_parameters: int = 0
    order: int = 0

    @property
    def passed(self) -> bool:
        return self.classification in (PASSES, DEFECTIVE)


def classify(
    system,
    balance: Optional[BalanceResult],
    expansion: Optional[PainleveExpansion],
    report: Optional[ResonanceReport],
) -> PainleveVerdict:
    order = system.order
    if balance is None:
        return PainleveVerdict(FAILS, ("no dominant balance with a negative integer leading exponent",), 0, order)
    why = [f"alpha={balance.alpha}"]
    if balance.constraints:
        why.append("constraints " + ", ".join(balance.describe_constraints()))
    if report is not None:
        why.append("resonances: integer " + str(list(report.integer_roots)))
        for q in report.quadratics:
            why.append("non-integer resonances " + q.describe())
    if expansion is None:
        return PainleveVerdict(FAILS, tuple(why + ["no expansion computed"]), 0, order)
    if expansion.failed:
        rec = next(r for r in expansion.resonances if r.status == "failed")
        why.append(f"compatibility condition fails at resonance {rec.index}")
        return PainleveVerdict(FAILS, tuple(why), 0, order)
    missing = [r for r in expansion.resonance_roots if r > expansion.computed_order]
    if missing:
        why.append(f"expansion stops before resonances {missing}")
    compatible = [r for r in expansion.resonances if r.compatible]
    free = len(compatible)
    why.append(f"{free} compatible resonance(s) + phi_0 = {free + 1} arbitrary functions, PDE order {order}")
    if missing:
        return PainleveVerdict(DEFECTIVE, tuple(why), free + 1, order)
    if free + 1 == order:
        return PainleveVerdict(PASSES, tuple(why), free + 1, order)
    return PainleveVerdict(DEFECTIVE, tuple(why), free + 1, order)


def painleve_test(system, mode: str = "reduced", order: Optional[int] = None, fixed=None):
    """Full pipeline on a concrete-exponent system; returns (balances, report, expansion, verdict)."""
    balances = dominant_balance(system)
    if not balances:
        return balances, None, None, classify(system, None, None, None)
    b = balances[0]
    report = resonance_spectrum(system, b)
    if order is None:
        order = max(report.positive_integer_roots + (1,))
    exp = expand(system, b, mode, order, fixed)
    return balances, report, exp, classify(system, b, exp, report)
