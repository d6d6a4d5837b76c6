"""Shared oracles and the acceptance summary hook.

The sympy helpers give an independent route to every symbolic quantity the
library computes: tensors are rebuilt from plain sympy expressions and
compared after ``cancel``.
"""

from __future__ import annotations

import sympy
import pytest

from kingeom.exactnum import RationalFn
from kingeom.suites import run_verification

SYMBOLS = sympy.symbols("x0 x1 x2 x3 c l", real=True)
X0, X1, X2, X3, C, L = SYMBOLS
COORDINATES = (X0, X1, X2, X3)
_NAMESPACE = {str(symbol): symbol for symbol in SYMBOLS}


def to_sympy(value) -> sympy.Expr:
    """A library scalar as a sympy expression over the shared symbols."""
    text = str(RationalFn.coerce(value)).replace("^", "**")
    return sympy.sympify(text, locals=_NAMESPACE)


def sympy_equal(value, expression) -> bool:
    return sympy.cancel(to_sympy(value) - expression) == 0


def sympy_matrix(tensor) -> sympy.Matrix:
    return sympy.Matrix(4, 4, lambda a, b: to_sympy(tensor[a, b]))


@pytest.fixture(scope="session")
def full_report():
    """One run of every suite over the built-in catalog, shared across modules."""
    return run_verification()


# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion after the run

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_collection_finish(session):
    for item in session.items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            number, title = marker.args
            entry = _CRITERIA.setdefault(number, {"title": title, "outcomes": []})
            entry.setdefault("nodes", []).append(item.nodeid)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _CRITERIA[marker.args[0]]["outcomes"].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not any(entry["outcomes"] for entry in _CRITERIA.values()):
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        outcomes = entry["outcomes"]
        if not outcomes:
            verdict = "NOT RUN"
        elif all(outcome == "passed" for outcome in outcomes):
            verdict = "PASS"
        elif any(outcome == "failed" for outcome in outcomes):
            verdict = "FAIL"
        else:
            verdict = "SKIPPED"
        terminalreporter.write_line(f"criterion {number}: {verdict:<7} {entry['title']}")
