"""Shared test plumbing.

The acceptance tests record a one-line outcome per criterion here; the
summary hook replays them at the end of the run so the pass/fail ledger
survives in plain text even when pytest captures stdout.
"""

from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES_DIR = REPO_ROOT / "fixtures"
REPORTS_DIR = REPO_ROOT / "reports"

_ACCEPTANCE_LINES = {}


def record_criterion(number: int, name: str, passed: bool, detail: str = "") -> None:
    line = f"criterion {number:2d} {name}: {'PASS' if passed else 'FAIL'}"
    if detail:
        line += f"  [{detail}]"
    _ACCEPTANCE_LINES[number] = line


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES_DIR


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(_ACCEPTANCE_LINES[number])
