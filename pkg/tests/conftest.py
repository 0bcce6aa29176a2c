import pytest

from src.counting.candidates import enumerate_candidates
from src.metricspace.alphabet import discrete
from src.shiftspace import ShiftSystem, coordinate_valuation


@pytest.fixture
def two_shift():
    """Full shift on {a, b} with the discrete metric and valuation a=0, b=1."""
    return ShiftSystem(discrete(2))


@pytest.fixture
def valuation(two_shift):
    return coordinate_valuation(two_shift.alphabet)


@pytest.fixture
def words(two_shift):
    """All words of a given depth written on [0, depth)."""

    def build(depth: int):
        return enumerate_candidates(two_shift, depth, depth).batch

    return build
