import math

import pytest

from sparse_ot import uniform_measure


def costs_close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-12)


@pytest.fixture
def line_instance():
    """Two sources on a line sent to three targets: x = {0, 1}, y = {0, 0.5, 1}."""
    return uniform_measure([[0.0], [1.0]]), uniform_measure([[0.0], [0.5], [1.0]])


ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
