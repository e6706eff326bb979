import pytest

_results = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n = mark.args[0]
    if rep.when == "call" or rep.failed or rep.skipped:
        ok = rep.passed and not rep.skipped
        _results.setdefault(n, []).append(ok)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        status = "PASS" if all(_results[n]) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}")
