import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

_LINES = {}


@pytest.fixture
def criterion(request):
    """Record one pass/fail line for an acceptance criterion, printed in the summary."""
    box = {}

    def note(label, detail=""):
        box["label"], box["detail"] = label, detail

    yield note
    if "label" in box:
        rep = getattr(request.node, "rep_call", None)
        ok = rep is not None and rep.passed
        _LINES[box["label"]] = f"{box['label']}: {'PASS' if ok else 'FAIL'}  {box['detail']}".rstrip()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_LINES, key=lambda k: (k == "smoke", len(k), k)):
        terminalreporter.write_line(_LINES[key])
