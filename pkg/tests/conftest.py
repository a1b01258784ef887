"""Shared test plumbing.

Makes the sibling helper modules importable and prints one
"ACCEPT <criterion>: PASS/FAIL" line per marked acceptance test at the end
of the run, so the verdicts survive output capture.
"""
from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

_criteria: dict[str, bool] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(name): acceptance criterion this test decides"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    name = marker.args[0]
    if report.when == "call":
        _criteria[name] = report.passed
    elif report.failed:
        _criteria[name] = False


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criteria:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, passed in _criteria.items():
        terminalreporter.write_line(f"ACCEPT {name}: {'PASS' if passed else 'FAIL'}")
