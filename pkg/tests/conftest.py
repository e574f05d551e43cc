import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
