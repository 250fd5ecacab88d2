import random

import pytest

from cyclicalg import cycalg


@pytest.fixture(scope="session")
def hamilton():
    return cycalg.hamilton()


@pytest.fixture(scope="session")
def cubic():
    return cycalg.cubic_algebra(2)


@pytest.fixture(scope="session")
def split():
    return cycalg.split_gaussian()


@pytest.fixture
def rng():
    return random.Random(1729)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance test; printed in the terminal summary."""
    title = request.node.function.__doc__.strip().splitlines()[0]
    yield title
    failed = getattr(request.node, "rep_call", None)
    status = "FAIL" if failed is None or failed.failed else "PASS"
    line = f"{status} {title}"
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
