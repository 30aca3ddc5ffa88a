import contextlib
import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_LINES = []


@pytest.fixture
def acceptance():
    """``with acceptance(n, text): ...`` records one pass/fail line per criterion."""

    @contextlib.contextmanager
    def record(n, text):
        try:
            yield
        except BaseException:
            _LINES.append((n, "FAIL", text))
            print(f"criterion {n}: FAIL  {text}")
            raise
        _LINES.append((n, "PASS", text))
        print(f"criterion {n}: PASS  {text}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n, verdict, text in sorted(_LINES):
        terminalreporter.write_line(f"criterion {n}: {verdict}  {text}")
