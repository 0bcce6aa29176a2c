"""Empirical measures and Katok covering numbers."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp

from src.birkhoff.models import KatokEstimate, KatokRow
from src.config import settings
from src.counting.candidates import enumerate_candidates
from src.counting.growth import trailing_half
from src.counting.models import Strategy
from src.errors import ConfigError, StrategyInfeasibleError
from src.shiftspace.points import PointBatch, SymbolicPoint
from src.shiftspace.system import ShiftSystem, bowen_reach

logger = logging.getLogger(__name__)

_MASS_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class EmpiricalMeasure:
    atoms: PointBatch
    weights: np.ndarray
    name: str = "empirical"

    def __post_init__(self):
        if len(self.weights) != len(self.atoms):
            raise ConfigError(
                f"{len(self.weights)} weights for {len(self.atoms)} atoms"
            )
        if (self.weights <= 0).any():
            raise ConfigError("measure weights must be positive")
        if abs(float(self.weights.sum()) - 1.0) > _MASS_TOL:
            raise ConfigError(f"measure has total mass {self.weights.sum()}, expected 1")

    def __len__(self) -> int:
        return len(self.atoms)

    @classmethod
    def uniform(cls, atoms: PointBatch, name: str = "uniform") -> "EmpiricalMeasure":
        return cls(atoms, np.full(len(atoms), 1 / len(atoms)), name)

    @classmethod
    def point_mass(cls, point: SymbolicPoint) -> "EmpiricalMeasure":
        return cls(PointBatch.single(point), np.ones(1), "point_mass")

    def to_lines(self) -> str:
        return "".join(
            f"{weight!r} | {self.atoms.point(i).to_line()}\n"
            for i, weight in enumerate(self.weights.tolist())
        )

    @classmethod
    def from_lines(cls, text: str, name: str = "empirical") -> "EmpiricalMeasure":
        weights, points = [], []
        for line in text.splitlines():
            if not line.strip():
                continue
            weight, point = line.split("|", 1)
            weights.append(float(weight))
            points.append(SymbolicPoint.from_line(point))
        return cls(PointBatch.from_points(points), np.asarray(weights), name)


def bernoulli_measure(
    sys: ShiftSystem,
    depth: int,
    sample: int | None = None,
    seed: int | None = None,
) -> EmpiricalMeasure:
    """Uniform Bernoulli measure seen through depth-``depth`` cylinder words.

    Without ``sample`` every word is an atom of equal weight; otherwise
    ``sample`` seeded words are drawn and repeated words merge their weight.
    """
    if sample is None:
        family = enumerate_candidates(sys, depth, depth, cap=sys.alphabet.size**depth)
        return EmpiricalMeasure.uniform(family.batch, name=f"bernoulli_{depth}")
    rng = np.random.default_rng(settings.SEED if seed is None else seed)
    draws = rng.integers(0, sys.alphabet.size, size=(sample, depth))
    words, counts = np.unique(draws, axis=0, return_counts=True)
    batch = PointBatch(words.astype(np.int64), 0, sys.alphabet.tail_symbol)
    return EmpiricalMeasure(batch, counts / counts.sum(), name=f"bernoulli_{depth}_sampled")


def periodic_orbit_measure(
    sys: ShiftSystem, period_word: Sequence[int], depth: int
) -> EmpiricalMeasure:
    """Uniform measure on the shifts of a periodic word, written on [0, depth)."""
    word = np.asarray(period_word, dtype=np.int64)
    period = len(word)
    if period == 0:
        raise ConfigError("periodic orbit needs a nonempty word")
    offsets = (np.arange(period)[:, None] + np.arange(depth)[None, :]) % period
    batch = PointBatch(word[offsets], 0, sys.alphabet.tail_symbol)
    sys.check_point(batch)
    return EmpiricalMeasure.uniform(batch, name=f"periodic_{period}")


def _ball_matrix(reach: np.ndarray, n: int) -> sparse.csr_matrix:
    return sparse.csr_matrix((reach >= n).astype(np.float64))


def _greedy_katok(balls: sparse.csr_matrix, weights: np.ndarray, target: float) -> int:
    uncovered = weights.copy()
    covered = 0.0
    count = 0
    while covered <= target:
        gains = balls @ uncovered
        center = int(np.argmax(gains))
        if gains[center] <= 0:
            break
        members = balls.indices[balls.indptr[center] : balls.indptr[center + 1]]
        covered += float(uncovered[members].sum())
        uncovered[members] = 0.0
        count += 1
    return count


def _exact_katok(balls: sparse.csr_matrix, weights: np.ndarray, target: float) -> int | None:
    centers, atoms = balls.shape
    # variables: ball choices x (centers) then covered-atom flags z (atoms)
    link = sparse.hstack([-balls.T, sparse.identity(atoms)]).tocsr()
    mass = sparse.hstack(
        [sparse.csr_matrix((1, centers)), sparse.csr_matrix(weights[None, :])]
    ).tocsr()
    result = milp(
        c=np.concatenate([np.ones(centers), np.zeros(atoms)]),
        constraints=[
            LinearConstraint(link, lb=-np.inf, ub=0),
            LinearConstraint(mass, lb=target + _MASS_TOL, ub=np.inf),
        ],
        integrality=np.ones(centers + atoms),
        bounds=Bounds(0, 1),
    )
    if result.status != 0 or result.x is None:
        logger.warning("Exact Katok search failed: %s", result.message)
        return None
    return int(round(result.x[:centers].sum()))


def katok_covering_number(
    sys: ShiftSystem,
    mu: EmpiricalMeasure,
    n: int,
    eps: float,
    delta: float,
    strategy: Strategy = "greedy",
    reach: np.ndarray | None = None,
) -> int:
    """Fewest atom-centered (n, eps)-balls whose union has mass > 1 - delta.

    Greedy gives an upper bound; exact search is available up to
    ``EXACT_KATOK_MAX_ATOMS`` atoms.
    """
    if not 0 < delta < 1:
        raise ConfigError(f"delta must lie in (0, 1), got {delta}")
    if reach is None:
        reach = bowen_reach(sys, mu.atoms, mu.atoms, eps, n)
    balls = _ball_matrix(reach, n)
    target = 1.0 - delta
    if strategy == "exact":
        if len(mu) > settings.EXACT_KATOK_MAX_ATOMS:
            raise StrategyInfeasibleError(
                f"exact Katok search is capped at {settings.EXACT_KATOK_MAX_ATOMS} "
                f"atoms, got {len(mu)}"
            )
        exact = _exact_katok(balls, mu.weights, target)
        if exact is not None:
            return exact
    return _greedy_katok(balls, mu.weights, target)


def katok_entropy_estimate(
    sys: ShiftSystem,
    mu: EmpiricalMeasure,
    eps: float,
    delta: float,
    n_grid: Sequence[int],
    strategy: Strategy = "greedy",
    workers: int | None = None,
) -> KatokEstimate:
    """Min and max difference quotients of log N over the top half of the n grid.

    Greedy rows also carry greedy / exact counts when the measure is small
    enough for exact search.
    """
    grid = list(n_grid)
    if not grid or grid[0] < 1 or any(b <= a for a, b in zip(grid, grid[1:], strict=False)):
        raise ConfigError(f"n grid must be positive and strictly increasing: {grid}")
    reach = bowen_reach(sys, mu.atoms, mu.atoms, eps, grid[-1], workers=workers)
    compare = strategy == "greedy" and len(mu) <= settings.EXACT_KATOK_MAX_ATOMS
    rows = []
    for n in grid:
        count = katok_covering_number(sys, mu, n, eps, delta, strategy, reach=reach)
        ratio = None
        if compare:
            exact = katok_covering_number(sys, mu, n, eps, delta, "exact", reach=reach)
            ratio = count / exact
        rows.append(
            KatokRow(
                n=n, count=count, log_count=float(np.log(count)), greedy_exact_ratio=ratio
            )
        )
        logger.debug("Katok n=%d eps=%.4g delta=%.3g: N = %d", n, eps, delta, count)

    ratios = [row.greedy_exact_ratio for row in rows if row.greedy_exact_ratio is not None]
    top = trailing_half(rows)
    if len(top) == 1:
        quotients = np.array([top[0].log_count / top[0].n])
    else:
        quotients = np.diff([r.log_count for r in top]) / np.diff([r.n for r in top])
    return KatokEstimate(
        eps=eps,
        delta=delta,
        rows=rows,
        lower=float(quotients.min()),
        upper=float(quotients.max()),
        atoms=len(mu),
        greedy_exact_ratio=max(ratios) if ratios else None,
    )
