"""Critical exponents of Bowen-ball cover weights."""

import logging
from collections.abc import Sequence

import numpy as np

from src.caratheodory.covers import cover_weight, greedy_bowen_cover, target_reach
from src.caratheodory.models import CapacityEstimate, CapacityRow, CriticalExponent
from src.config import settings
from src.counting.growth import trailing_half
from src.errors import BracketNotFoundError, ConfigError
from src.shiftspace.points import PointBatch
from src.shiftspace.system import ShiftSystem

logger = logging.getLogger(__name__)


def uniform_cover_sizes(
    sys: ShiftSystem,
    target: PointBatch,
    eps: float,
    lengths: Sequence[int],
    reach: np.ndarray | None = None,
    workers: int | None = None,
) -> dict[int, int]:
    """Greedy cover sizes using a single ball length n, for each n."""
    lengths = sorted(int(n) for n in lengths)
    if reach is None:
        reach = target_reach(sys, target, eps, lengths[-1], workers)
    top = max(lengths[-1], int(reach.max()))
    return {
        n: len(greedy_bowen_cover(sys, target, eps, n, top, lengths=[n], reach=reach))
        for n in lengths
    }


def bowen_entropy_estimate(
    sys: ShiftSystem,
    target: PointBatch,
    eps: float,
    N: int,
    n_max: int,
    exponent_range: tuple[float, float] | None = None,
    tol: float | None = None,
    workers: int | None = None,
) -> CriticalExponent:
    """Bisect for the exponent where the best-found cover weight crosses 1.

    At each trial exponent s the weight is the smaller of the greedy mixed-length cover
    built at s and every single-length cover. Covers found are never better
    than the infimum, so the value bounds h_top^B(target, ε) from above.
    """
    lo, hi = exponent_range or (0.0, settings.EXPONENT_CEILING)
    tol = settings.BISECTION_TOL if tol is None else tol
    if not lo < hi or tol <= 0:
        raise ConfigError(f"bad exponent range [{lo}, {hi}] or tolerance {tol}")
    reach = target_reach(sys, target, eps, n_max, workers)
    uniform = uniform_cover_sizes(sys, target, eps, range(N, n_max + 1), reach)

    def weight(s: float) -> float:
        mixed = cover_weight(greedy_bowen_cover(sys, target, eps, N, n_max, s, reach=reach), s)
        single = min(count * float(np.exp(-s * n)) for n, count in uniform.items())
        return min(mixed, single)

    w_lo, w_hi = weight(lo), weight(hi)
    if w_lo < 1 or w_hi >= 1:
        raise BracketNotFoundError(
            f"cover weight does not cross 1 on [{lo}, {hi}]: "
            f"W({lo}) = {w_lo:.6g}, W({hi}) = {w_hi:.6g}"
        )
    while hi - lo > tol:
        mid = (lo + hi) / 2
        w_mid = weight(mid)
        if w_mid >= 1:
            lo, w_lo = mid, w_mid
        else:
            hi, w_hi = mid, w_mid

    logger.info("Bowen entropy at eps=%.4g, N=%d: s in [%.4f, %.4f]", eps, N, lo, hi)
    return CriticalExponent(
        eps=eps,
        N=N,
        n_max=n_max,
        s_lo=lo,
        s_hi=hi,
        value=(lo + hi) / 2,
        weight_lo=w_lo,
        weight_hi=w_hi,
        targets=len(target),
    )


def capacity_entropy(
    sys: ShiftSystem,
    target: PointBatch,
    eps: float,
    n_grid: Sequence[int],
    workers: int | None = None,
) -> CapacityEstimate:
    """Per-N critical exponents log C(N) / N of single-length covers.

    ``upper`` and ``lower`` are the max and min over the top half of the grid,
    standing in for the lim sup and lim inf in N.
    """
    grid = list(n_grid)
    if not grid or grid[0] < 1 or any(b <= a for a, b in zip(grid, grid[1:], strict=False)):
        raise ConfigError(f"N grid must be positive and strictly increasing: {grid}")
    sizes = uniform_cover_sizes(sys, target, eps, grid, workers=workers)
    rows = [
        CapacityRow(N=n, count=count, exponent=float(np.log(count)) / n)
        for n, count in sizes.items()
    ]
    for row in rows:
        logger.debug("capacity eps=%.4g N=%d: C = %d", eps, row.N, row.count)
    exponents = [row.exponent for row in trailing_half(rows)]
    return CapacityEstimate(eps=eps, rows=rows, upper=max(exponents), lower=min(exponents))
