import pytest

_LINES = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(ident, text): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        status = "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL")
        _LINES.append((mark.args[0], status, mark.args[1]))


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for ident, status, text in sorted(_LINES, key=lambda t: (int(t[0].rstrip("abcdef")), t[0])):
        terminalreporter.write_line(f"[{status}] criterion {ident}: {text}")
