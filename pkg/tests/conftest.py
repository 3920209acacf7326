import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from graph_inverse import fixtures  # noqa: E402

FIXTURES = fixtures.GRAPHS

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def G():
    return fixtures.graph


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {text}")
