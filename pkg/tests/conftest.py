import pytest

# criterion number -> list of (check name, passed)
CRITERIA: dict = {}


@pytest.fixture(autouse=True)
def _criterion_tracker(request):
    """Record the outcome of tests marked ``criterion(n)``."""
    marker = request.node.get_closest_marker("criterion")
    if marker is None:
        yield None
        return
    number = marker.args[0]
    CRITERIA.setdefault(number, [])
    entry = [request.node.name, False]
    CRITERIA[number].append(entry)
    yield number
    rep = getattr(request.node, "rep_call", None)
    entry[1] = bool(rep and rep.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        checks = CRITERIA[number]
        failed = [name for name, ok in checks if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {number}: {status} ({len(checks) - len(failed)}/{len(checks)} checks)"
        if failed:
            line += " failed: " + ", ".join(failed)
        terminalreporter.write_line(line)
