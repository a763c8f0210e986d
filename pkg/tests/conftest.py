from __future__ import annotations

import os
import sys
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from ptpainleve.frontend import builtin  # noqa: E402
from ptpainleve.painleve import dominant_balance, expand  # noqa: E402


@lru_cache(maxsize=None)
def model(name: str, eps=2, mu="same"):
    s = builtin(name)
    if eps is None and mu is None:
        return s
    return s.with_deformation(eps=eps, mu=eps if mu == "same" else mu)


@lru_cache(maxsize=None)
def balance(name: str, eps=2):
    return dominant_balance(model(name, eps))[0]


@lru_cache(maxsize=None)
def expansion(name: str, eps: int, mode: str, order: int, lambda2=None):
    fixed = None if lambda2 is None else {2: lambda2}
    return expand(model(name, eps), balance(name, eps), mode, order, fixed)


@pytest.fixture
def burgers2():
    return model("burgers", 2)


@pytest.fixture
def kdv2():
    return model("kdv", 2)


_CRITERIA: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion exercised by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n = mark.args[0]
    if rep.when == "call" or rep.outcome != "passed":
        ok = rep.passed and not hasattr(rep, "wasxfail")
        _CRITERIA.setdefault(n, []).append("ok" if ok else item.name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        bad = [r for r in _CRITERIA[n] if r != "ok"]
        terminalreporter.write_line(f"criterion {n:2d}: {'FAIL' if bad else 'PASS'}" + (f" ({', '.join(bad)})" if bad else ""))
