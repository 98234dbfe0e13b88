import random

import pytest

from cofiltree import fixtures

ACCEPTANCE_RESULTS = []


@pytest.fixture
def rng():
    return random.Random(20240917)


@pytest.fixture(scope="session")
def grid_square():
    return fixtures.load("grid_square")


@pytest.fixture
def triangle():
    return fixtures.hollow_triangle()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(line)
