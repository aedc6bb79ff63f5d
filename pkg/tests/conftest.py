import pytest

_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    label, title = marker.args
    detail = dict(item.user_properties).get("detail", "")
    _CRITERIA.append((label, title, report.passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, title, passed, detail in _CRITERIA:
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {label}: {title}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)


@pytest.fixture
def detail(record_property):
    """Attach a one-line summary to the acceptance report of the current test."""
    def note(text):
        record_property("detail", text)
    return note
