from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from flatspan.config import Config  # noqa: E402


@pytest.fixture
def square() -> Config:
    return Config.from_affine([[1, 1], [1, -1], [-1, 1], [-1, -1]], origin=[0, 0])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        terminalreporter.write_line(results[key])
