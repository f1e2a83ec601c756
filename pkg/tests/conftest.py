"""Shared fixtures; collects acceptance outcomes for a one-line-per-criterion summary."""
import pytest

_ACCEPTANCE = {}


@pytest.fixture
def acceptance():
    """Record ``(number, title, passed, detail)`` for the end-of-run summary."""

    def record(number, title, passed, detail=""):
        _ACCEPTANCE[number] = (title, bool(passed), detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, passed, detail = _ACCEPTANCE[number]
        flag = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{flag}] {number:>2}. {title}: {detail}")
