"""Prints one PASS/FAIL line per acceptance criterion after the run."""

_CRITERIA: dict[str, tuple[str, float]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if report.when == "call" or report.failed:
        outcome = "PASS" if report.passed else "FAIL"
        previous = _CRITERIA.get(name)
        if previous is None or outcome == "FAIL":
            _CRITERIA[name] = (outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name in sorted(_CRITERIA):
        outcome, duration = _CRITERIA[name]
        number = int(name.split("_")[2])
        label = name.split("_", 3)[3].replace("_", " ")
        terminalreporter.write_line(f"criterion {number:2d} {outcome} {label} ({duration:.2f}s)")
