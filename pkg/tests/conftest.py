import contextlib

import pytest

_RESULTS = {}


@pytest.fixture
def criterion():
    """Context manager that records a PASS/FAIL line for an acceptance criterion."""

    @contextlib.contextmanager
    def check(number, title):
        notes = []
        try:
            yield notes
        except BaseException:
            _RESULTS[str(number)] = ("FAIL", title, notes)
            raise
        _RESULTS[str(number)] = ("PASS", title, notes)

    return check


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        status, title, notes = _RESULTS[number]
        detail = f" ({'; '.join(notes)})" if notes else ""
        terminalreporter.write_line(f"criterion {number}: {status} {title}{detail}")
