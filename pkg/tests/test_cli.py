import json
import subprocess
import sys

import pytest

from ptpainleve.frontend import parse_report
from ptpainleve.frontend.cli import main
from ptpainleve.frontend.report import CSV_COLUMNS

KDVB = "pde kb {\n field u(x, t)\n param nu: real\n equation: dt(u) + u*D(u; 1) + D3(u; 1) = nu*D2(u; 1)\n}\n"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generic_burgers_balance(capsys):
    code, out, _ = run(capsys, "balance", "--model", "burgers", "--generic")
    assert code == 0
    assert "alpha = -1" in out and "constraint: mu=eps" in out


def test_kdv_eps_one_resonances(capsys):
    code, out, _ = run(capsys, "resonances", "--model", "kdv", "--epsilon", "1")
    assert code == 0 and "resonances: {-1, 4, 6}" in out


def test_kdv_travelling_series_file(tmp_path, capsys):
    path = tmp_path / "series.json"
    code, out, _ = run(
        capsys, "expand", "--model", "kdv", "--epsilon", "2", "--order", "33", "--ansatz", "travelling",
        "--format", "json", "--out", str(path),
    )
    assert code == 0 and out == ""
    r = parse_report(path.read_text())
    values = {c["power"]: c["value"] for c in r.coefficients}
    assert values["3"] == "1/156*i*omega"
    assert values["-2"] == "7"
    assert r.mode == "travelling" and r.provenance["mode"] == "travelling"


@pytest.mark.parametrize(
    "argv,verdict",
    [
        (["classify", "--model", "burgers", "--epsilon", "2"], "PASSES"),
        (["classify", "--model", "kdv", "--epsilon", "2"], "DEFECTIVE"),
        (["classify", "--model", "kdv", "--epsilon", "1"], "PASSES"),
    ],
)
def test_passing_classes_exit_zero(capsys, argv, verdict):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and f"verdict: {verdict}" in out


def test_failing_model_exits_one(tmp_path, capsys):
    src = tmp_path / "kb.pde"
    src.write_text(KDVB)
    code, out, _ = run(capsys, "classify", "--model", str(src), "--format", "json")
    assert code == 1
    assert json.loads(out)["verdict"]["classification"] == "FAILS"


@pytest.mark.parametrize(
    "argv",
    [
        ["expand", "--model", "burgers", "--generic"],
        ["balance", "--model", "burgers", "--epsilon", "2", "--format", "csv"],
        ["balance", "--model", "burgers", "--epsilon", "x"],
        ["frobnicate", "--model", "burgers"],
        ["balance"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_missing_model_file_names_path(tmp_path, capsys):
    missing = tmp_path / "absent.pde"
    code, _, err = run(capsys, "balance", "--model", str(missing))
    assert code == 2 and str(missing) in err


def test_unwritable_output_names_path(tmp_path, capsys):
    target = tmp_path / "no" / "such" / "dir" / "r.json"
    code, _, err = run(capsys, "balance", "--model", "burgers", "--epsilon", "2", "--out", str(target))
    assert code == 2 and str(target) in err


def test_parse_error_is_located(tmp_path, capsys):
    src = tmp_path / "bad.pde"
    src.write_text("pde b {\n field u(x, t)\n equation: dt(u) + = 0\n}\n")
    code, _, err = run(capsys, "balance", "--model", str(src))
    assert code == 2
    assert err.startswith(f"{src}:3:")


def test_converge_csv(capsys):
    code, out, _ = run(capsys, "converge", "--model", "burgers", "--epsilon", "2", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 29
    assert code == 0


def test_converge_json_diagnostics(capsys):
    _, out, _ = run(capsys, "converge", "--model", "burgers", "--epsilon", "2", "--format", "json")
    d = parse_report(out).diagnostics
    assert d["root_test"]["verdict"] == "CONVERGENT-INDICATION"
    assert d["bound"]["failures"] == ["1"]


def test_travelling_numeric_check(capsys):
    code, out, _ = run(capsys, "travelling", "--model", "burgers", "--epsilon", "2")
    assert code == 0 and "max relative deviation" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--model", "kdv", "--epsilon", "2", "--order", "10")
    assert code == 0 and "true" in out


def test_json_reports_parse_for_every_command(capsys):
    for cmd in ("balance", "resonances", "expand", "classify", "verify"):
        code, out, _ = run(capsys, cmd, "--model", "burgers", "--epsilon", "2", "--order", "6", "--format", "json")
        assert code == 0
        r = parse_report(out)
        assert r.model == "burgers" and r.provenance["engine_version"]


def test_module_entry_point():
    p = subprocess.run(
        [sys.executable, "-m", "ptpainleve.frontend.cli", "resonances", "--model", "burgers", "--epsilon", "2"],
        capture_output=True, text=True, timeout=120,
    )
    assert p.returncode == 0 and "{-1, 2}" in p.stdout
