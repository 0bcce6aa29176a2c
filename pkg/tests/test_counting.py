import math

import numpy as np
import pytest

from src.config import settings
from src.counting import (
    DepthRule,
    enumerate_candidates,
    htop_eps_estimate,
    maximal_separated,
    mdim_estimate,
    spanning_check,
)
from src.counting.growth import exact_horizons, trailing_half
from src.errors import ConfigError, ResolutionError, StrategyInfeasibleError
from src.metricspace.alphabet import cantor, discrete, interval_grid
from src.shiftspace import ShiftSystem


def test_enumerate_candidates_is_lexicographic(two_shift):
    family = enumerate_candidates(two_shift, 3, 3)
    assert family.mode == "exact"
    assert len(family) == 8
    np.testing.assert_array_equal(family.batch.words[1], [0, 0, 1])
    np.testing.assert_array_equal(family.batch.words[4], [1, 0, 0])


def test_enumerate_candidates_samples_above_cap(two_shift):
    family = enumerate_candidates(two_shift, 10, 10, cap=100, sample_size=50, seed=3)
    assert family.mode == "sampled"
    assert family.sample_size == 50
    assert 0 < len(family) <= 50
    again = enumerate_candidates(two_shift, 10, 10, cap=100, sample_size=50, seed=3)
    np.testing.assert_array_equal(family.batch.words, again.batch.words)


def test_enumerate_candidates_depth_below_horizon(two_shift):
    with pytest.raises(ConfigError, match="candidate depth"):
        enumerate_candidates(two_shift, 4, 3)


def test_depth_rule_auto_margin(two_shift):
    assert DepthRule().depth(two_shift, 5, 0.5) == 5
    assert DepthRule(2).depth(two_shift, 5, 0.5) == 7
    # far coordinates contribute at most eps/4 once 2^-margin * diam <= eps/4
    assert DepthRule("auto").margin_for(two_shift, 0.5) == 3


def test_all_words_are_separated(two_shift, words):
    separated = maximal_separated(two_shift, words(4), 4, 0.5)
    assert len(separated) == 16


def test_greedy_and_exact_agree_on_cylinders(two_shift, words):
    batch = words(5)
    greedy = maximal_separated(two_shift, batch, 3, 0.5, "greedy")
    exact = maximal_separated(two_shift, batch, 3, 0.5, "exact")
    assert len(greedy) == len(exact)


def test_exact_beats_greedy_on_a_path():
    # three points on a line, the middle one close to both ends
    grid = ShiftSystem(interval_grid(points=3))
    batch = enumerate_candidates(grid, 1, 1, symbols=np.array([1, 0, 2])).batch
    greedy = maximal_separated(grid, batch, 1, 0.6, "greedy")
    exact = maximal_separated(grid, batch, 1, 0.6, "exact")
    assert len(greedy) == 1
    assert len(exact) == 2


def test_exact_strategy_cap(two_shift, words, monkeypatch):
    monkeypatch.setattr(settings, "EXACT_SEPARATED_MAX_CANDIDATES", 4)
    with pytest.raises(StrategyInfeasibleError, match="capped"):
        maximal_separated(two_shift, words(3), 3, 0.5, "exact")


def test_separation_below_metric_error(two_shift, words):
    with pytest.raises(ConfigError, match="metric error"):
        maximal_separated(two_shift, words(2), 2, 1e-12)


def test_spanning_check(two_shift, words):
    batch = words(5)
    separated = maximal_separated(two_shift, batch, 2, 0.5)
    report = spanning_check(two_shift, separated, batch)
    assert report.passed
    assert report.candidates_checked == 32


def test_trailing_half():
    assert trailing_half([1, 2, 3, 4]) == [3, 4]
    assert trailing_half([1, 2, 3]) == [2, 3]
    assert trailing_half([1, 2]) == [1, 2]
    assert trailing_half([1]) == [1]


def test_htop_of_full_two_shift(two_shift):
    ledger = htop_eps_estimate(two_shift, 0.5, [2, 3, 4, 5])
    assert [row.count for row in ledger.rows] == [4, 8, 16, 32]
    assert ledger.slope == pytest.approx(math.log(2))
    assert ledger.residual == pytest.approx(0.0, abs=1e-9)
    assert not ledger.sampled


def test_htop_rejects_unsorted_grid(two_shift):
    with pytest.raises(ConfigError, match="strictly increasing"):
        htop_eps_estimate(two_shift, 0.5, [3, 2])


def test_finite_alphabet_has_zero_mdim(two_shift):
    estimate = mdim_estimate(two_shift, [0.5, 0.4], [2, 3, 4])
    assert [row.htop for row in estimate.rows] == pytest.approx([math.log(2)] * 2)
    assert estimate.upper == pytest.approx(0.0, abs=1e-9)
    assert len(estimate.ledgers) == 2


def test_mdim_resolution_guard():
    coarse = ShiftSystem(interval_grid(points=11))
    with pytest.raises(ResolutionError, match="tail error"):
        mdim_estimate(coarse, [0.3, 0.15], [1, 2])


def test_mdim_grows_with_finer_scales():
    system = ShiftSystem(interval_grid(points=65))
    estimate = mdim_estimate(system, [0.5, 0.25], [1, 2], cap=4096)
    assert estimate.rows[1].htop > estimate.rows[0].htop
    assert estimate.rows[1].symbols > estimate.rows[0].symbols


@pytest.mark.parametrize("size", [3, 4])
def test_htop_of_full_shift_on_k_symbols(size):
    system = ShiftSystem(discrete(size))
    ledger = htop_eps_estimate(system, 0.5, [2, 3, 4])
    assert [row.count for row in ledger.rows] == [size**2, size**3, size**4]
    assert ledger.slope == pytest.approx(math.log(size), rel=0.02)


def test_exact_horizons_respect_the_budget():
    system = ShiftSystem(interval_grid(points=65))
    assert exact_horizons(system, 8, 0.125, range(1, 7), DepthRule(), 1024) == [1, 2, 3]
    # never fewer than two horizons
    assert exact_horizons(system, 64, 0.015, range(1, 7), DepthRule(), 32) == [1, 2]


class TestMeanDimensionOracles:
    def test_interval_grid_has_dimension_one(self):
        system = ShiftSystem(interval_grid(points=4097))
        eps = [2.0**-k for k in range(3, 7)]
        estimate = mdim_estimate(system, eps, range(1, 7))
        assert [row.symbols for row in estimate.rows] == [8, 16, 32, 64]
        assert [row.htop for row in estimate.rows] == pytest.approx(
            [math.log(8), math.log(16), math.log(32), math.log(64)]
        )
        assert estimate.fitted_slope == pytest.approx(1.0, abs=0.15)
        assert all(row.mode == "exact" for row in estimate.rows)

    def test_cantor_shift_has_dimension_log2_over_log3(self):
        system = ShiftSystem(cantor(depth=8))
        eps = [3.0**-k for k in range(2, 6)]
        estimate = mdim_estimate(system, eps, range(1, 7))
        assert [row.symbols for row in estimate.rows] == [4, 8, 16, 32]
        assert estimate.fitted_slope == pytest.approx(math.log(2) / math.log(3), abs=0.1)
        assert estimate.lower <= estimate.fitted_slope <= estimate.upper + 1e-9
