import pytest
from hypothesis import settings

# sympy and the process pool have slow first calls; timing is not under test
settings.register_profile("default", deadline=None)
settings.load_profile("default")

_criteria: list[tuple[str, str, bool, float]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _criteria.append((mark.args[0], mark.args[1], rep.passed, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, title, ok, secs in _criteria:
        terminalreporter.write_line(f"criterion {label:<4} {'PASS' if ok else 'FAIL'}  {secs:7.1f}s  {title}")
