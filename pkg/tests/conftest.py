import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# criterion id -> (passed, summary); filled by test_acceptance
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def acceptance_record():
    def record(key: str, passed: bool, summary: str) -> None:
        ACCEPTANCE[key] = (passed, summary)
        print(f"ACCEPTANCE {'PASS' if passed else 'FAIL'} [{key}] {summary}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        passed, summary = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {key}: {summary}")
