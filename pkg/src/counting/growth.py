"""Growth of separated-set counts in n, and its rate against |log ε|."""

import logging
from collections.abc import Sequence

import numpy as np

from src.counting.candidates import DepthRule, enumerate_candidates
from src.counting.models import GrowthLedger, GrowthRow, MdimEstimate, MdimRow, Strategy
from src.counting.separated import maximal_separated
from src.config import settings
from src.errors import ConfigError, ResolutionError
from src.metricspace.covers import greedy_net, slope_summary
from src.shiftspace.system import ShiftSystem

logger = logging.getLogger(__name__)


def trailing_half(values: list) -> list:
    """The top half of a grid, never fewer than two entries when available."""
    start = max(0, min(len(values) // 2, len(values) - 2))
    return values[start:]


def htop_eps_estimate(
    sys: ShiftSystem,
    eps: float,
    n_grid: Sequence[int],
    depth_rule: DepthRule | None = None,
    symbols: Sequence[int] | None = None,
    strategy: Strategy = "greedy",
    cap: int | None = None,
    sample_size: int | None = None,
    seed: int | None = None,
    workers: int | None = None,
) -> GrowthLedger:
    """Ledger of log s(n, ε) with a slope fitted over the top half of the n grid."""
    grid = list(n_grid)
    if not grid or grid[0] < 1 or any(b <= a for a, b in zip(grid, grid[1:], strict=False)):
        raise ConfigError(f"n grid must be positive and strictly increasing: {grid}")
    depth_rule = depth_rule or DepthRule()
    symbol_array = None if symbols is None else np.asarray(symbols, dtype=np.int64)

    rows: list[GrowthRow] = []
    for n in grid:
        depth = depth_rule.depth(sys, n, eps)
        family = enumerate_candidates(
            sys, n, depth, symbol_array, cap=cap, sample_size=sample_size, seed=seed
        )
        separated = maximal_separated(sys, family, n, eps, strategy, workers)
        rows.append(
            GrowthRow(
                eps=eps,
                n=n,
                depth=depth,
                count=len(separated),
                log_count=float(np.log(len(separated))),
                mode=family.mode,
                strategy=strategy,
            )
        )
        logger.debug("eps=%.6g n=%d: s = %d", eps, n, len(separated))

    top = trailing_half(rows)
    x = np.array([row.n for row in top], dtype=float)
    y = np.array([row.log_count for row in top])
    if len(top) == 1:
        slope, residual = float(y[0] / x[0]), 0.0
        upper = lower = slope
    else:
        slope, residual, upper, lower = slope_summary(x, y)
    return GrowthLedger(
        eps=eps,
        rows=rows,
        slope=slope,
        residual=residual,
        upper=upper,
        lower=lower,
        symbols=sys.alphabet.size if symbol_array is None else len(symbol_array),
        resolution=sys.alphabet.resolution,
        sampled=any(row.mode == "sampled" for row in rows),
    )


def exact_horizons(
    sys: ShiftSystem,
    net_size: int,
    eps: float,
    n_grid: Sequence[int],
    depth_rule: DepthRule,
    budget: int,
) -> list[int]:
    """Horizons whose full word family over the net stays within ``budget`` words.

    The first two grid entries are always kept so a growth slope exists.
    """
    grid = list(n_grid)
    kept = [n for n in grid if net_size ** depth_rule.depth(sys, n, eps) <= budget]
    return kept if len(kept) >= 2 else grid[:2]


def mdim_estimate(
    sys: ShiftSystem,
    eps_grid: Sequence[float],
    n_grid: Sequence[int],
    depth_rule: DepthRule | None = None,
    strategy: Strategy = "greedy",
    cap: int | None = None,
    sample_size: int | None = None,
    seed: int | None = None,
    workers: int | None = None,
    word_budget: int | None = None,
) -> MdimEstimate:
    """Difference quotients of h_top(ε) against |log ε| over a decreasing ε grid.

    At each ε the candidate words use an ε-separated net of the alphabet, so
    the counts are lower bounds of s(n, ε) on the cloud. Horizons whose word
    family would exceed ``word_budget`` are dropped per ε, so fine scales fit
    their growth rate on short horizons instead of a saturated sample.
    """
    eps = [float(e) for e in eps_grid]
    if len(eps) < 2 or any(e <= 0 for e in eps) or any(
        b >= a for a, b in zip(eps, eps[1:], strict=False)
    ):
        raise ConfigError(f"eps grid must be positive, decreasing, length >= 2: {eps}")
    floor = 2 * (sys.tail_error + sys.alphabet.resolution)
    if min(eps) <= floor:
        raise ResolutionError(
            f"min eps {min(eps)} must exceed 2 * (tail error + resolution) = {floor}"
        )
    depth_rule = depth_rule or DepthRule()
    budget = settings.MDIM_WORD_BUDGET if word_budget is None else word_budget

    ledgers: list[GrowthLedger] = []
    rows: list[MdimRow] = []
    for radius in eps:
        net = greedy_net(sys.alphabet, radius)
        horizons = exact_horizons(sys, len(net), radius, n_grid, depth_rule, budget)
        if len(horizons) < len(list(n_grid)):
            logger.info(
                "eps=%.6g: %d net symbols, horizons cut to n <= %d",
                radius,
                len(net),
                horizons[-1],
            )
        ledger = htop_eps_estimate(
            sys,
            radius,
            horizons,
            depth_rule=depth_rule,
            symbols=net,
            strategy=strategy,
            cap=cap,
            sample_size=sample_size,
            seed=seed,
            workers=workers,
        )
        ledgers.append(ledger)
        rows.append(
            MdimRow(
                eps=radius,
                abs_log_eps=float(abs(np.log(radius))),
                htop=ledger.slope,
                symbols=len(net),
                n_max=horizons[-1],
                resolution=sys.alphabet.resolution,
                mode="sampled" if ledger.sampled else "exact",
            )
        )
        logger.info("eps=%.6g: h_top = %.4f over %d net symbols", radius, ledger.slope, len(net))

    x = np.array([row.abs_log_eps for row in rows])
    y = np.array([row.htop for row in rows])
    fitted, _, upper, lower = slope_summary(x, y)
    return MdimEstimate(
        rows=rows,
        upper=upper,
        lower=lower,
        fitted_slope=fitted,
        resolution=sys.alphabet.resolution,
        ledgers=ledgers,
    )
