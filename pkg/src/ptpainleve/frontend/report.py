"""Structured run reports: JSON documents with string leaves and CSV diagnostics."""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field, fields
from typing import Any, Optional

import mpmath

from .. import __version__

DIGITS = 30
CSV_COLUMNS = ("n", "re_num", "re_den", "im_num", "im_den", "abs", "abs_nth_root", "bound_rhs", "holds")


def _check_leaves(value: Any, path: str) -> None:
    if isinstance(value, str):
        return
    if isinstance(value, list):
        for i, v in enumerate(value):
            _check_leaves(v, f"{path}[{i}]")
        return
    if isinstance(value, dict):
        for k, v in value.items():
            if not isinstance(k, str):
                raise TypeError(f"{path}: key {k!r} is not a string")
            _check_leaves(v, f"{path}.{k}")
        return
    if value is None:
        return
    raise TypeError(f"{path}: leaf {value!r} is not a string")


@dataclass
class Report:
    """One CLI run; every leaf is a string so exact values never pass through floats."""

    model: str
    mode: str
    balance: list = field(default_factory=list)
    resonances: Optional[dict] = None
    coefficients: list = field(default_factory=list)
    verdict: Optional[dict] = None
    diagnostics: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        for f in fields(self):
            _check_leaves(getattr(self, f.name), f.name)

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def serialize(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n"


def parse(text: str) -> Report:
    data = json.loads(text)
    if not isinstance(data, dict):
        raise ValueError("report must be a JSON object")
    names = {f.name for f in fields(Report)}
    unknown = set(data) - names
    if unknown:
        raise ValueError(f"unknown report fields: {sorted(unknown)}")
    return Report(**data)


def provenance(source: bytes, mode: str) -> dict:
    return {"input_sha256": hashlib.sha256(source).hexdigest(), "engine_version": __version__, "mode": mode}


def num(x) -> str:
    """Decimal string of a high-precision float."""
    return mpmath.nstr(x, DIGITS, strip_zeros=False) if x is not None else ""


def balance_records(balances) -> list:
    return [
        {
            "alpha": str(b.alpha),
            "constraints": b.describe_constraints(),
            "lambda0": [str(v) for v in b.lambda0],
            "method": b.method,
        }
        for b in balances
    ]


def resonance_record(report, integrality=None) -> dict:
    out = {
        "polynomial": str(report.polynomial),
        "integer_roots": [str(r) for r in report.integer_roots],
        "rational_roots": [str(r) for r in report.rational_roots],
        "quadratics": [q.describe() for q in report.quadratics],
        "quadratic_factors": [str(q.factor) for q in report.quadratics],
        "residual_factor": str(report.residual_factor),
        "universal": str(report.universal).lower(),
    }
    if integrality is not None:
        out["integrality"] = {
            "parameter": integrality.parameter or "",
            "values": "all" if integrality.values is None else [str(v) for v in integrality.values],
            "method": integrality.method,
            "discriminant": "" if integrality.discriminant is None else str(integrality.discriminant),
            "note": integrality.note,
        }
    return out


def coefficient_records(expansion) -> list:
    return [{"power": str(p), "value": str(c)} for p, c in expansion.terms()]


def expansion_record(expansion) -> dict:
    return {
        "order": str(expansion.computed_order),
        "alpha": str(expansion.alpha),
        "failed": str(expansion.failed).lower(),
        "failure_index": "" if expansion.failure_index is None else str(expansion.failure_index),
        "free_parameters": [getattr(s, "name", str(s)) for s in expansion.free_parameters],
        "resonances": [
            {
                "index": str(r.index),
                "status": r.status,
                "compatible": str(r.compatible).lower(),
                "value": "" if r.value is None else str(r.value),
                "obstruction": "" if r.obstruction is None else str(r.obstruction),
            }
            for r in expansion.resonances
        ],
    }


def verdict_record(verdict) -> dict:
    return {
        "classification": verdict.classification,
        "justification": list(verdict.justification),
        "free_parameters": str(verdict.free_parameters),
        "order": str(verdict.order),
    }


def root_test_record(rt) -> dict:
    return {
        "verdict": rt.verdict,
        "limit": num(rt.limit),
        "slope": num(rt.slope),
        "strictly_decreasing": str(rt.strictly_decreasing).lower(),
        "note": rt.note,
        "nth_roots": [[str(n), num(v)] for n, v in rt.values],
    }


def bound_record(bound) -> dict:
    return {
        "holds": str(bound.holds).lower(),
        "holds_up_to": str(bound.holds_up_to),
        "failures": [str(m) for m in bound.failures],
    }


def diagnostics_rows(seq, bound=None) -> list[dict]:
    """One row per sequence entry; ``bound_rhs`` is the real-part bound, ``holds`` covers both parts."""
    by_m = {e.m: e for e in bound.entries} if bound is not None else {}
    rows = []
    with mpmath.workprec(seq.prec):
        for e in seq.entries:
            b = by_m.get(e.n)
            rows.append({
                "n": str(e.n),
                "re_num": str(int(e.value.re.numerator)),
                "re_den": str(int(e.value.re.denominator)),
                "im_num": str(int(e.value.im.numerator)),
                "im_den": str(int(e.value.im.denominator)),
                "abs": num(e.magnitude(seq.prec)),
                "abs_nth_root": num(e.nth_root(seq.prec)),
                "bound_rhs": num(b.re_rhs) if b else "",
                "holds": str(b.holds).lower() if b else "",
            })
    return rows


def diagnostics_csv(rows: list[dict], columns=CSV_COLUMNS) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
