"""Collects the acceptance verdicts and prints them after the run."""

import pytest

_VERDICTS: list[str] = []


@pytest.fixture
def verdict():
    """Record ``(criterion, ok, detail)``; the line is printed in the summary."""

    def record(name: str, ok: bool, detail: str) -> bool:
        _VERDICTS.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        print(_VERDICTS[-1])
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in _VERDICTS:
            terminalreporter.write_line(line)
