from fractions import Fraction

import pytest

from circlejacobi import JacobiParams, build_family

F = Fraction

# The six parameter points every cross-module check runs over: the
# single-moment point, the free point, the symmetric point, an integer
# pair, and two half-integer pairs straddling zero.
GRID = (
    (F(1, 2), F(-1, 2)),
    (F(-1, 2), F(-1, 2)),
    (F(0), F(0)),
    (F(1), F(2)),
    (F(3, 2), F(1, 2)),
    (F(-1, 2), F(3, 2)),
)

_cache: dict = {}

# One line per acceptance criterion, filled in by test_acceptance.py and
# echoed after the run so the verdicts survive pytest's output capture.
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def family():
    """Memoized family builder shared by the whole session."""

    def get(alpha, beta, n):
        key = (F(alpha), F(beta), n)
        if key not in _cache:
            _cache[key] = build_family(JacobiParams(key[0], key[1]), n)
        return _cache[key]

    return get
