import pytest

_CRITERION_LINES = []


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion, then assert."""

    def rec(name, ok, detail=""):
        line = ("PASS " if ok else "FAIL ") + name
        if detail and not ok:
            line += " -- " + detail
        _CRITERION_LINES.append(line)
        assert ok, name + (": " + detail if detail else "")

    return rec


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _CRITERION_LINES:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for line in _CRITERION_LINES:
            terminalreporter.write_line(line)
