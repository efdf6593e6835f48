import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# (label, passed) lines collected by the acceptance module
ACCEPTANCE: list[tuple[str, bool]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}")
