"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

import pytest

_lines = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion checked by this test")


@pytest.fixture
def note(request):
    """Attach a short measurement string to the current test's summary line."""

    def add(text):
        request.node.user_properties.append(("note", text))

    return add


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        num, title = marker.args
        notes = "; ".join(v for k, v in item.user_properties if k == "note")
        status = "PASS" if report.passed else "FAIL"
        _lines.append((num, f"[{status}] criterion {num}: {title}" + (f" ({notes})" if notes else "")))


def pytest_terminal_summary(terminalreporter):
    if not _lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_lines):
        terminalreporter.write_line(line)
