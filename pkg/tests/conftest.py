import math

import pytest

from pairdiscord import TwoQubitXState, twisting_state
from pairdiscord.validation import read_fixtures

GOLDEN_N = 12
GOLDEN_THETA = 0.1 * math.pi


@pytest.fixture(scope="session")
def fixtures():
    return read_fixtures()


@pytest.fixture
def bell():
    return TwoQubitXState(0.5, 0.0, 0.0, 0.5, a=0.5, b=0.0)


@pytest.fixture
def mixed():
    return TwoQubitXState(0.25, 0.25, 0.25, 0.25)


@pytest.fixture(scope="session")
def golden():
    return twisting_state(GOLDEN_N, GOLDEN_THETA)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
