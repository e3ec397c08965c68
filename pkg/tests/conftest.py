import pytest

from helpers import pt
from sawitness.rational_ec import INFINITY, Curve

_acceptance_lines = []


@pytest.fixture
def record_criterion():
    def record(number, ok, text):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}"
        _acceptance_lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def mordell():
    """y^2 = x^3 + 3 with generator (1, 2)."""
    return Curve(0, 3), pt(1, 2)


@pytest.fixture
def congruent():
    """y^2 = x^3 - 36x with generator (-3, 9) and its full 2-torsion."""
    C = Curve(-36, 0)
    return C, pt(-3, 9), (INFINITY, pt(0, 0), pt(6, 0), pt(-6, 0))
