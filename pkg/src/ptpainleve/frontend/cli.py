"""Command-line driver: ``ptpainleve <command> --model ... [options]``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .. import __version__
from ..errors import PainleveError, PDEParseError, PDESemanticError
from ..symcore.gauss import GaussRational, format_gauss, parse_gauss
from . import report as rep
from .models import configure, load_model

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ANSATZ = ("general", "reduced", "travelling")
FORMATS = ("json", "text", "csv")
DEFAULT_ORDER = 30
NUMERIC_TOLERANCE = 1e-6


class UsageError(Exception):
    pass


@dataclass
class Outcome:
    report: rep.Report
    lines: list[str]
    status: int
    csv_rows: Optional[list[dict]] = None
    csv_columns: Sequence[str] = rep.CSV_COLUMNS
    notes: list[str] = field(default_factory=list)


def _exponent(text: str):
    if text == "generic":
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'generic', got {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"deformation exponent must be positive, got {value}")
    return value


def _mu(text: str):
    return "same" if text == "same" else _exponent(text)


def _lambda(text: str):
    if text == "free":
        return "free"
    try:
        return parse_gauss(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a rational, 'free' or 0, got {text!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", required=True, help="builtin name (burgers, kdv) or path to a definition file")
    common.add_argument("--epsilon", type=_exponent, default=None, metavar="INT|generic")
    common.add_argument("--mu", type=_mu, default="same", metavar="INT|generic", help="defaults to --epsilon")
    common.add_argument("--generic", action="store_true", help="keep both exponents symbolic")
    common.add_argument("--order", type=int, default=None, metavar="N", help=f"expansion order (default {DEFAULT_ORDER})")
    common.add_argument("--ansatz", choices=ANSATZ, default=None)
    common.add_argument("--lambda2", type=_lambda, default=None, metavar="RATIONAL|free|0")
    common.add_argument("--out", default=None, metavar="PATH")
    common.add_argument("--format", choices=FORMATS, default="text")

    numeric = argparse.ArgumentParser(add_help=False)
    numeric.add_argument("--kappa", type=_rational, default=Fraction(1))
    numeric.add_argument("--omega", type=_rational, default=Fraction(1))
    numeric.add_argument("--prec", type=int, default=150, help="mantissa bits")

    parser = argparse.ArgumentParser(prog="ptpainleve", description="Painlevé test for PT-deformed evolution equations")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("balance", parents=[common], help="dominant balance and exponent constraints")
    sub.add_parser("resonances", parents=[common], help="resonance polynomial and integrality")
    sub.add_parser("expand", parents=[common], help="Painlevé expansion coefficients")
    sub.add_parser("classify", parents=[common], help="PASSES / DEFECTIVE / FAILS verdict")
    conv = sub.add_parser("converge", parents=[common, numeric], help="root test and bound on the travelling series")
    conv.add_argument("--tail", type=int, default=5)
    trav = sub.add_parser("travelling", parents=[common, numeric], help="travelling-wave ODE and numeric cross-check")
    trav.add_argument("--window", type=float, nargs=2, default=(0.1, 0.5), metavar=("LO", "HI"))
    trav.add_argument("--rtol", type=float, default=1e-10)
    trav.add_argument("--tolerance", type=float, default=NUMERIC_TOLERANCE, help="largest accepted deviation")
    sub.add_parser("verify", parents=[common], help="residual check of the expansion at every solved order")
    return parser


# ---------------------------------------------------------------------------
# helpers


class _Run:
    def __init__(self, args):
        self.args = args
        self.system, self.source = load_model(args.model)
        eps, mu = (None, None) if args.generic else (args.epsilon, args.mu)
        self.system = configure(self.system, eps, mu)

    def mode(self, default: str) -> str:
        return self.args.ansatz or default

    def report(self, mode: str, **kw) -> rep.Report:
        return rep.Report(model=self.system.name, mode=mode, provenance=rep.provenance(self.source, mode), **kw)

    def require_concrete(self):
        if not self.system.is_concrete:
            raise UsageError(f"'{self.args.command}' needs concrete exponents; pass --epsilon N")

    def balances(self):
        from ..painleve import dominant_balance

        return dominant_balance(self.system)

    def fixed(self, resonances, numeric: bool) -> tuple[dict, list[str]]:
        """Resonance bindings; numeric runs pin unbound free coefficients to 0."""
        lam = self.args.lambda2
        out, notes = {}, []
        if lam not in (None, "free"):
            out[2] = lam
        if numeric:
            if lam == "free":
                raise UsageError(f"'{self.args.command}' evaluates numerically; --lambda2 must be a rational")
            for r in resonances:
                if r not in out:
                    out[r] = GaussRational(0)
                    notes.append(f"lambda{r} set to 0")
        return out, notes

    def order(self, default: int = DEFAULT_ORDER) -> int:
        n = self.args.order if self.args.order is not None else default
        if n < 0:
            raise UsageError("--order must be non-negative")
        return n


def _balance_lines(balances) -> list[str]:
    lines = []
    for b in balances:
        lines.append(f"alpha = {b.alpha}")
        lines.append("constraint: " + (", ".join(b.describe_constraints()) or "none"))
        for v in b.lambda0:
            lines.append(f"lambda0 = {v}")
    return lines


def _no_balance(run: _Run, mode: str) -> Outcome:
    from ..painleve import classify

    verdict = classify(run.system, None, None, None)
    r = run.report(mode, verdict=rep.verdict_record(verdict))
    return Outcome(r, ["no admissible balance: the equation FAILS the Painlevé test"], EXIT_FAIL)


def _resonance_lines(report, integrality) -> list[str]:
    roots = ", ".join(str(r) for r in report.integer_roots)
    lines = [f"resonance polynomial: {report.polynomial}", f"resonances: {{{roots}}}"]
    for q in report.rational_roots:
        lines.append(f"rational resonance: {q}")
    for q in report.quadratics:
        lines.append(f"non-integer resonances: {q.describe()}  from {q.factor}")
    if integrality is not None and integrality.parameter:
        vals = "all" if integrality.values is None else ", ".join(map(str, integrality.values)) or "none"
        lines.append(f"integer resonances for {integrality.parameter} in: {vals} ({integrality.method})")
    return lines


def _expansion(run: _Run, balance, mode: str, order: int, fixed):
    from ..painleve import expand, resonance_spectrum

    notes = []
    if mode == "general":
        roots = resonance_spectrum(run.system, balance).positive_integer_roots
        cap = max(roots + (1,))
        if order > cap:
            notes.append(f"general ansatz capped at order {cap}")
            order = cap
    return expand(run.system, balance, mode, order, fixed), notes


def _coefficient_lines(expansion) -> list[str]:
    lines = [f"phi^{p}: {c}" for p, c in expansion.terms() if c]
    for r in expansion.resonances:
        lines.append(f"resonance {r.index}: {r.status}" + (f" ({r.obstruction} != 0)" if r.obstruction is not None else ""))
    return lines


# ---------------------------------------------------------------------------
# commands


def cmd_balance(run: _Run) -> Outcome:
    mode = run.mode("reduced")
    balances = run.balances()
    if not balances:
        return _no_balance(run, mode)
    return Outcome(run.report(mode, balance=rep.balance_records(balances)), _balance_lines(balances), EXIT_OK)


def cmd_resonances(run: _Run) -> Outcome:
    from ..painleve import integrality_analysis, resonance_spectrum

    mode = run.mode("reduced")
    balances = run.balances()
    if not balances:
        return _no_balance(run, mode)
    report = resonance_spectrum(run.system, balances[0])
    integ = integrality_analysis(report)
    r = run.report(mode, balance=rep.balance_records(balances), resonances=rep.resonance_record(report, integ))
    return Outcome(r, _resonance_lines(report, integ), EXIT_OK)


def cmd_expand(run: _Run) -> Outcome:
    run.require_concrete()
    mode = run.mode("reduced")
    balances = run.balances()
    if not balances:
        return _no_balance(run, mode)
    fixed, _ = run.fixed((), numeric=False)
    ex, notes = _expansion(run, balances[0], mode, run.order(), fixed)
    r = run.report(
        mode,
        balance=rep.balance_records(balances),
        coefficients=rep.coefficient_records(ex),
        diagnostics={"expansion": rep.expansion_record(ex), "notes": notes},
    )
    rows = [{"power": str(p), "value": str(c)} for p, c in ex.terms()]
    status = EXIT_FAIL if ex.failed else EXIT_OK
    return Outcome(r, notes + _coefficient_lines(ex), status, rows, ("power", "value"))


def cmd_classify(run: _Run) -> Outcome:
    from ..painleve import FAILS, classify, integrality_analysis, resonance_spectrum

    run.require_concrete()
    mode = run.mode("reduced")
    balances = run.balances()
    if not balances:
        return _no_balance(run, mode)
    b = balances[0]
    report = resonance_spectrum(run.system, b)
    last = max(report.positive_integer_roots + (1,))
    fixed, _ = run.fixed((), numeric=False)
    ex, notes = _expansion(run, b, mode, run.order(last), fixed)
    verdict = classify(run.system, b, ex, report)
    r = run.report(
        mode,
        balance=rep.balance_records(balances),
        resonances=rep.resonance_record(report, integrality_analysis(report)),
        coefficients=rep.coefficient_records(ex),
        verdict=rep.verdict_record(verdict),
        diagnostics={"expansion": rep.expansion_record(ex), "notes": notes},
    )
    lines = notes + [f"verdict: {verdict.classification}"] + [f"  {j}" for j in verdict.justification]
    return Outcome(r, lines, EXIT_FAIL if verdict.classification == FAILS else EXIT_OK)


def _travelling_expansion(run: _Run):
    from ..painleve import resonance_spectrum

    run.require_concrete()
    if run.args.ansatz not in (None, "travelling"):
        raise UsageError(f"'{run.args.command}' works on the travelling ansatz only")
    balances = run.balances()
    if not balances:
        return balances, None, []
    b = balances[0]
    roots = resonance_spectrum(run.system, b).positive_integer_roots
    fixed, notes = run.fixed(roots, numeric=True)
    ex, more = _expansion(run, b, "travelling", run.order(), fixed)
    return balances, ex, notes + more


def _bindings(run: _Run) -> dict:
    return {"kappa": run.args.kappa, "omega": run.args.omega}


def cmd_converge(run: _Run) -> Outcome:
    from ..analysis import CONVERGENT, CoefficientSequence, bound_check, root_test

    balances, ex, notes = _travelling_expansion(run)
    if ex is None:
        return _no_balance(run, "travelling")
    if ex.failed:
        r = run.report("travelling", balance=rep.balance_records(balances), diagnostics={"expansion": rep.expansion_record(ex)})
        return Outcome(r, [f"expansion fails at resonance {ex.failure_index}"], EXIT_FAIL)
    seq = CoefficientSequence.from_expansion(ex, _bindings(run), run.args.prec)
    rt = root_test(seq, tail=run.args.tail)
    has_kappa = any(name == "kappa" for name, _ in run.system.parameters)
    bound = bound_check(seq, run.order()) if has_kappa else None
    rows = rep.diagnostics_rows(seq, bound)
    diag = {"root_test": rep.root_test_record(rt), "notes": notes, "rows": rows}
    if bound is not None:
        diag["bound"] = rep.bound_record(bound)
    coeffs = rep.coefficient_records(ex)
    for rec, (_, c) in zip(coeffs, ex.terms()):
        rec["at_bindings"] = format_gauss(_value_at(c, _bindings(run)))
    r = run.report("travelling", balance=rep.balance_records(balances), coefficients=coeffs, diagnostics=diag)
    lines = notes + [
        f"root test: {rt.verdict}",
        f"  fitted limit of |a_n|^(1/n): {rep.num(rt.limit)}",
        f"  strictly decreasing: {str(rt.strictly_decreasing).lower()}",
    ]
    if rt.note:
        lines.append(f"  {rt.note}")
    if bound is not None:
        lines.append(f"bound holds at every index: {str(bound.holds).lower()}")
        if bound.failures:
            lines.append("  fails at n = " + ", ".join(map(str, bound.failures)))
    return Outcome(r, lines, EXIT_OK if rt.verdict == CONVERGENT else EXIT_FAIL, rows)


def _value_at(c, bindings):
    from ..analysis import exact_at

    return exact_at(c, bindings) if c else GaussRational(0)


def cmd_travelling(run: _Run) -> Outcome:
    from ..analysis import numeric_compare, reduce_travelling

    run.require_concrete()
    trav = reduce_travelling(run.system)
    lines = [f"travelling-wave ODE: {trav.ode} = 0"]
    diag = {"ode": str(trav.ode), "ode_order": str(trav.order)}
    if trav.integrated is not None:
        lines.append(f"once integrated: {trav.integrated} = const  (integrating factor {trav.integrating_factor})")
        diag["integrated"] = str(trav.integrated)
        diag["integrating_factor"] = str(trav.integrating_factor)
    balances, ex, notes = _travelling_expansion(run)
    status = EXIT_OK
    if ex is None or ex.failed:
        lines.append("no series to compare against")
        status = EXIT_FAIL
    else:
        cmp = numeric_compare(
            ex, run.system, tuple(run.args.window), _bindings(run), rtol=run.args.rtol, prec=run.args.prec
        )
        lo, hi = cmp.window
        diag["numeric"] = {
            "order": str(cmp.order),
            "window": [rep.num(lo), rep.num(hi)],
            "max_deviation": rep.num(cmp.max_deviation),
            "steps": str(cmp.steps),
            "note": cmp.note,
        }
        lines += notes + [
            f"series order {cmp.order}, window [{float(lo):.4g}, {float(hi):.4g}], {cmp.steps} steps",
            f"max relative deviation: {float(cmp.max_deviation):.3e}",
        ]
        if cmp.note:
            lines.append(f"  {cmp.note}")
        if not float(cmp.max_deviation) < run.args.tolerance:
            status = EXIT_FAIL
    r = run.report("travelling", balance=rep.balance_records(balances), diagnostics=diag)
    return Outcome(r, lines, status)


def cmd_verify(run: _Run) -> Outcome:
    from ..painleve import solved_orders_vanish

    run.require_concrete()
    mode = run.mode("reduced")
    balances = run.balances()
    if not balances:
        return _no_balance(run, mode)
    fixed, _ = run.fixed((), numeric=False)
    ex, notes = _expansion(run, balances[0], mode, run.order(), fixed)
    ok, bad = solved_orders_vanish(run.system, balances[0], ex)
    diag = {"residual_vanishes": str(ok).lower(), "bad_orders": [str(k) for k in bad], "notes": notes}
    r = run.report(mode, balance=rep.balance_records(balances), diagnostics=diag)
    lines = notes + [f"residual vanishes at orders 0..{ex.computed_order}: {str(ok).lower()}"]
    if bad:
        lines.append("nonzero at relative orders " + ", ".join(map(str, bad)))
    return Outcome(r, lines, EXIT_OK if ok else EXIT_FAIL)


COMMANDS = {
    "balance": cmd_balance,
    "resonances": cmd_resonances,
    "expand": cmd_expand,
    "classify": cmd_classify,
    "converge": cmd_converge,
    "travelling": cmd_travelling,
    "verify": cmd_verify,
}


def render(outcome: Outcome, fmt: str) -> str:
    if fmt == "json":
        return rep.serialize(outcome.report)
    if fmt == "csv":
        if outcome.csv_rows is None:
            raise UsageError("csv output is available for 'converge' and 'expand' only")
        return rep.diagnostics_csv(outcome.csv_rows, outcome.csv_columns)
    return "\n".join(outcome.lines) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        run = _Run(args)
        outcome = COMMANDS[args.command](run)
        text = render(outcome, args.format)
    except UsageError as exc:
        print(f"ptpainleve {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PDEParseError, PDESemanticError) as exc:
        print(f"{args.model}:{exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"{exc.filename or args.model}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_USAGE
    except PainleveError as exc:
        print(f"ptpainleve {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"{args.out}: cannot write report: {exc.strerror or exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return outcome.status


if __name__ == "__main__":
    raise SystemExit(main())
