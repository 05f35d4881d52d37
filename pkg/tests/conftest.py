import numpy as np
import pytest

from hopfield_lift.exact import HopfieldInstance


@pytest.fixture
def small_h():
    return HopfieldInstance(np.array([[1.0, 2.0], [3.0, 4.0]]))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
