from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("repo", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

ROOT = Path(__file__).resolve().parents[1]

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def source_text() -> str:
    path = ROOT / "paper.md"
    if not path.exists():
        pytest.skip("source document not available next to the package")
    return path.read_text(encoding="utf-8")


@pytest.fixture
def record_acceptance():
    return _ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
