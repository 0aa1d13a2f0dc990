"""Test configuration: acceptance-criteria reporting hook."""

_CRITERIA = []


def record_criterion(index, label, passed, detail):
    """Register one acceptance-criterion outcome for the terminal summary."""
    _CRITERIA.append((index, label, bool(passed), detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for index, label, passed, detail in sorted(_CRITERIA):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(
            f"criterion {index:2d} [{status}] {label}: {detail}")
