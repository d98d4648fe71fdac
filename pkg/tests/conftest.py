"""Collects acceptance outcomes and prints one line per criterion at the end."""
from __future__ import annotations

import pytest

_OUTCOMES: dict[int, list[tuple[str, str, str]]] = {}
_TITLES: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    # failures in setup count too; a passing setup is not itself a result
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        status = "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL")
        detail = "; ".join(str(v) for k, v in item.user_properties if k == "detail")
        _TITLES[number] = title
        _OUTCOMES.setdefault(number, []).append((item.name, status, detail))


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_OUTCOMES):
        parts = _OUTCOMES[number]
        status = "PASS" if all(s == "PASS" for _, s, _ in parts) else "FAIL"
        tr.write_line(f"[{status}] #{number} {_TITLES[number]}")
        for name, s, detail in parts:
            if len(parts) > 1 or detail:
                tr.write_line(f"        {s:4s} {name}" + (f": {detail}" if detail else ""))
