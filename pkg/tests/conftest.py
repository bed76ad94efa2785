import itertools

import pytest

from homsec.structure import build, complete

CRITERIA: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        CRITERIA[number] = (title, report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        title, outcome, duration = CRITERIA[number]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict} ({duration:.2f}s) {title}")


@pytest.fixture
def five():
    """Three overlapping triples on five participants (not threshold)."""
    return build(5, 3, [{1, 2, 3}, {2, 3, 4}, {3, 4, 5}])


@pytest.fixture
def gamma_dd():
    """All triples of {1,2,3,4} and of {1,2,3,5}."""
    sets = set(itertools.combinations((1, 2, 3, 4), 3)) | set(itertools.combinations((1, 2, 3, 5), 3))
    return build(5, 3, sorted(sets))


@pytest.fixture
def path4():
    return build(4, 2, [{1, 2}, {2, 3}, {3, 4}])


@pytest.fixture
def k53():
    return complete(5, 3)
