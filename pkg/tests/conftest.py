import numpy as np
import pytest

from trigsurf import random_real_polynomial, rect

# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def curve():
    """A random real 3x3 curve."""
    return random_real_polynomial(rect(2, [3, 3]), seed=7)
