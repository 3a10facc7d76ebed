import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# (criterion, verdict, detail) lines recorded by test_acceptance
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
