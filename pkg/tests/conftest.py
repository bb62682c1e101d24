import pytest

_criteria: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    failed = report.failed or (call.when == "call" and report.skipped)
    previous = _criteria.get(number, (title, "PASS"))[1]
    if failed or previous == "FAIL":
        _criteria[number] = (title, "FAIL")
    elif report.when == "call":
        _criteria[number] = (title, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status = _criteria[number]
        terminalreporter.write_line(f"[{status}] AC{number}: {title}")
