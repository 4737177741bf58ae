"""Shared fixtures and the acceptance-criterion summary printed after a run."""

import json
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

_criteria: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.fixture(scope="session")
def golden():
    return json.loads((DATA / "golden_exp_sums.json").read_text())["cases"]


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when not in ("setup", "call"):
        return
    n, title = mark.args
    detail = dict(item.user_properties).get("detail", "")
    if call.excinfo is not None:
        _criteria[n] = (title, "FAIL", str(call.excinfo.value).splitlines()[0][:160] if str(call.excinfo.value) else "")
    elif call.when == "call":
        _criteria[n] = (title, "PASS", detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, status, detail = _criteria[n]
        line = f"[{status}] criterion {n:2d}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
