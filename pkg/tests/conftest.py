"""Aggregates acceptance sub-tests into one PASS/FAIL line per criterion."""
from collections import OrderedDict

import pytest

_RESULTS: "OrderedDict[int, bool]" = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and report.passed:
        return
    n = marker.args[0]
    _RESULTS[n] = _RESULTS.get(n, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if _RESULTS[n] else 'FAIL'}")
