import pytest

from bandforge.prismatoid import PrismatoidParams, build_prismatoid, preset_params, regular_h

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number and summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, text = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _criteria.setdefault(n, [text, True])
        if not rep.passed:
            _criteria[n][1] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        text, ok = _criteria[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {text}")


@pytest.fixture(scope="session")
def fig3():
    return build_prismatoid(preset_params("fig3"))


@pytest.fixture(scope="session")
def fig1b():
    return build_prismatoid(preset_params("fig1b"))


@pytest.fixture(scope="session")
def acute():
    return build_prismatoid(preset_params("acute"))


@pytest.fixture(scope="session")
def control_prism():
    """Right prism over a regular hexagon."""
    return build_prismatoid(PrismatoidParams(h=regular_h(1.0), y=0.0, z=0.3))
