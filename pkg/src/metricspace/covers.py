"""Ball covers of alphabets: box counting and finite covers with a Lebesgue number."""

import logging
from collections.abc import Sequence

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.spatial import cKDTree

from src.config import settings
from src.errors import ConfigError, InfeasibleCoverError, ResolutionError
from src.metricspace.alphabet import Alphabet
from src.metricspace.models import (
    BoxCountRow,
    BoxDimensionReport,
    CoverElement,
    CoverSpec,
)

logger = logging.getLogger(__name__)

# relative slack so that closed balls keep boundary points despite rounding
_CLOSED_SLACK = 1e-12


def ball_membership(space: Alphabet, radius: float) -> sparse.csr_matrix:
    """Row c lists the symbols in the closed ball of ``radius`` around symbol c."""
    reach = radius * (1 + _CLOSED_SLACK)
    if space.coords is not None:
        tree = cKDTree(space.coords)
        neighbours = tree.query_ball_point(space.coords, r=reach, p=1)
        lengths = np.fromiter((len(n) for n in neighbours), dtype=np.int64)
        indptr = np.concatenate([[0], np.cumsum(lengths)])
        indices = np.concatenate([np.sort(n) for n in neighbours]).astype(np.int64)
        data = np.ones(len(indices), dtype=np.int64)
        return sparse.csr_matrix((data, indices, indptr), shape=(space.size,) * 2)
    return sparse.csr_matrix((space.distance_matrix <= reach).astype(np.int64))


def _ball(membership: sparse.csr_matrix, center: int) -> np.ndarray:
    return membership.indices[membership.indptr[center] : membership.indptr[center + 1]]


def greedy_ball_cover(membership: sparse.csr_matrix) -> list[int]:
    """Max-coverage greedy; ties go to the lowest center index."""
    uncovered = np.ones(membership.shape[1], dtype=np.int64)
    centers: list[int] = []
    while uncovered.any():
        gains = membership @ uncovered
        center = int(np.argmax(gains))
        centers.append(center)
        uncovered[_ball(membership, center)] = 0
    return centers


def exact_ball_cover_count(membership: sparse.csr_matrix) -> int | None:
    """Minimum number of balls covering the cloud, or None if the solver gives up."""
    n = membership.shape[0]
    result = milp(
        c=np.ones(n),
        constraints=LinearConstraint(membership.T.tocsr(), lb=1, ub=np.inf),
        integrality=np.ones(n),
        bounds=Bounds(0, 1),
    )
    if result.status != 0 or result.x is None:
        logger.warning("Exact cover search failed: %s", result.message)
        return None
    return int(round(result.fun))


def cover_count(space: Alphabet, eps: float) -> tuple[int, int | None]:
    """Greedy and (below the size cap) exact minimal ε-ball cover counts."""
    membership = ball_membership(space, eps)
    greedy = len(greedy_ball_cover(membership))
    exact = None
    if space.size <= settings.EXACT_COVER_MAX_POINTS:
        exact = exact_ball_cover_count(membership)
    return greedy, exact


def slope_summary(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float, float]:
    """Least-squares slope, RMS residual and max/min consecutive difference quotients."""
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    quotients = np.diff(y) / np.diff(x)
    return float(slope), residual, float(quotients.max()), float(quotients.min())


def box_dimension_estimate(
    family: Sequence[Alphabet], eps_grid: Sequence[float]
) -> BoxDimensionReport:
    """Box-counting slopes of log N(ε) against |log ε| on the finest discretization."""
    eps = np.asarray(eps_grid, dtype=float)
    if len(family) == 0:
        raise ConfigError("box_dimension_estimate needs at least one discretization")
    if len(eps) < 2 or np.any(eps <= 0) or np.any(np.diff(eps) >= 0):
        raise ConfigError(
            f"eps grid must be positive, strictly decreasing, length >= 2: {eps_grid}"
        )
    finest_index = int(np.argmin([member.resolution for member in family]))
    finest = family[finest_index]
    if finest.resolution >= eps.min() / 2:
        raise ResolutionError(
            f"discretization spacing {finest.resolution} is not below "
            f"min eps / 2 = {eps.min() / 2}"
        )

    rows: list[BoxCountRow] = []
    for member_index, member in enumerate(family):
        for radius in eps:
            greedy, exact = cover_count(member, float(radius))
            rows.append(
                BoxCountRow(
                    member=member_index,
                    resolution=member.resolution,
                    eps=float(radius),
                    abs_log_eps=float(abs(np.log(radius))),
                    greedy_count=greedy,
                    exact_count=exact,
                    count=greedy if exact is None else exact,
                )
            )
            logger.debug("member %d eps %.6g: N = %d", member_index, radius, greedy)

    finest_rows = [row for row in rows if row.member == finest_index]
    x = np.array([row.abs_log_eps for row in finest_rows])
    y = np.log([row.count for row in finest_rows])
    slope, residual, upper, lower = slope_summary(x, y)
    return BoxDimensionReport(
        fitted_slope=slope,
        residual=residual,
        upper_slope=upper,
        lower_slope=lower,
        resolution=finest.resolution,
        rows=rows,
    )


def greedy_net(space: Alphabet, separation: float) -> list[int]:
    """Greedy index-ordered net whose points are pairwise more than ``separation`` apart."""
    nearest = np.full(space.size, np.inf)
    net: list[int] = []
    while True:
        free = np.flatnonzero(nearest > separation)
        if len(free) == 0:
            return net
        point = int(free[0])
        net.append(point)
        nearest = np.minimum(nearest, space.rows(point)[0])


def build_cover(space: Alphabet, eps: float) -> CoverSpec:
    """Finite cover by closed balls of radius ε/2 around an ε/4-net.

    Diameters and the Lebesgue number are checked exhaustively on the cloud.
    """
    if eps <= 0 or (space.diam > 0 and eps > space.diam):
        raise ConfigError(f"cover radius must lie in (0, {space.diam}], got {eps}")
    net = greedy_net(space, eps / 4)
    membership = ball_membership(space, eps / 2)

    elements: list[CoverElement] = []
    diam_bound = 0.0
    best_gap = np.zeros(space.size)
    for center in net:
        members = _ball(membership, center)
        distances = space.rows(members)
        inside = np.zeros(space.size, dtype=bool)
        inside[members] = True
        diam_bound = max(diam_bound, float(distances[:, members].max()))
        if inside.all():
            gap = np.full(len(members), np.inf)
        else:
            gap = distances[:, ~inside].min(axis=1)
        best_gap[members] = np.maximum(best_gap[members], gap)
        elements.append(CoverElement(center=center, radius=eps / 2, size=len(members)))

    lebesgue_bound = float(min(best_gap.min(), eps))
    if diam_bound > eps * (1 + _CLOSED_SLACK) or lebesgue_bound < eps / 4:
        raise InfeasibleCoverError(
            f"cover at eps={eps} has diameter {diam_bound} and Lebesgue number "
            f"{lebesgue_bound}; refine the discretization"
        )
    logger.info("Built %d-element cover at eps=%.6g", len(elements), eps)
    return CoverSpec(
        eps=eps,
        elements=elements,
        diam_bound=diam_bound,
        lebesgue_bound=lebesgue_bound,
        resolution=space.resolution,
    )
