import sys
from pathlib import Path

from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    # setup time counts too: the property-suite run lives in a fixture
    if report.when in ("setup", "call") and "test_criterion_" in report.nodeid:
        name = report.nodeid.split("test_criterion_")[1]
        outcome, secs = _ACCEPTANCE.get(name, ("passed", 0.0))
        if report.outcome != "passed" or report.when == "call":
            outcome = report.outcome
        _ACCEPTANCE[name] = (outcome, secs + report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split("_")[0])):
        outcome, secs = _ACCEPTANCE[name]
        num, _, label = name.partition("_")
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {verdict}  {label.replace('_', ' ')} ({secs:.2f}s)")
