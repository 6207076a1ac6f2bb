"""Shared test plumbing: the acceptance checklist printed after the run."""

ACCEPTANCE_LOG = []


def record_criterion(num: int, name: str, ok: bool, detail: str = "") -> bool:
    """Log one pass/fail line for an acceptance criterion; returns ok."""
    status = "PASS" if ok else "FAIL"
    suffix = f" [{detail}]" if detail else ""
    ACCEPTANCE_LOG.append(f"criterion {num:02d} {status} - {name}{suffix}")
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LOG):
        terminalreporter.write_line(line)
