import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_acceptance = []


def pytest_runtest_logreport(report):
    label = dict(report.user_properties).get("acceptance")
    if label is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        _acceptance.append((label, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed in sorted(_acceptance):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}")
