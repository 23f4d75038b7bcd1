import random

import pytest

from sylvester_laws.hadamard import build_sylvester


@pytest.fixture(scope="session")
def sylvester():
    cache = {}

    def get(p):
        if p not in cache:
            cache[p] = build_sylvester(p)
        return cache[p]

    return get


@pytest.fixture
def rng():
    return random.Random(20141015)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
