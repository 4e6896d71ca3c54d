from __future__ import annotations

import pytest

# Acceptance criteria live in test_acceptance.py; each test there prints one
# PASS/FAIL line through this reporter so a plain pytest run shows the
# per-criterion outcome.
_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call" or "test_acceptance" not in str(item.fspath):
        return
    label = item.function.__doc__ or item.name
    label = label.strip().splitlines()[0]
    _ACCEPTANCE_RESULTS.append((label, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in _ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{status}: {label}")
