"""Shared test plumbing: visible one-line results for the acceptance gate."""

ACCEPTANCE_RESULTS = {}


def record_acceptance(number: int, ok: bool, description: str) -> None:
    ACCEPTANCE_RESULTS[number] = (ok, description)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        ok, description = ACCEPTANCE_RESULTS[number]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {status} - {description}")
