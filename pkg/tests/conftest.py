import pytest

_REPORT = []


@pytest.fixture
def report():
    """Record one acceptance line: report(criterion, ok, detail)."""

    def add(criterion, ok, detail=""):
        _REPORT.append((criterion, bool(ok), detail))
        return bool(ok)

    return add


def pytest_terminal_summary(terminalreporter):
    if not _REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in _REPORT:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
