import pytest

_acceptance = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    criterion = dict(report.user_properties).get("criterion")
    if criterion:
        _acceptance.append((criterion, report.outcome.upper()))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        verdict = "PASS" if outcome == "PASSED" else "FAIL"
        terminalreporter.write_line(f"{verdict:4}  {name}")


@pytest.fixture
def criterion(record_property):
    def tag(name):
        record_property("criterion", name)

    return tag
