"""Covers of point sets by Bowen balls of varying lengths."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from src.caratheodory.models import AppendixCheck
from src.counting.candidates import CandidateFamily
from src.counting.separated import SeparatedSet
from src.errors import ConfigError, UncoverableError
from src.shiftspace.points import PointBatch
from src.shiftspace.system import ShiftSystem, bowen_reach

logger = logging.getLogger(__name__)

_TIE = 1e-12


@dataclass(frozen=True, eq=False)
class CoverFamily:
    """Bowen balls B_{lengths[i]}(centers[i], eps)."""

    centers: PointBatch
    lengths: np.ndarray
    eps: float
    center_indices: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.lengths)

    @property
    def min_n(self) -> int:
        return int(self.lengths.min())

    def covers(self, sys: ShiftSystem, target: PointBatch) -> bool:
        """Every target point lies in some ball, with certified membership."""
        reach = bowen_reach(sys, self.centers, target, self.eps, int(self.lengths.max()))
        return bool((reach >= self.lengths[:, None]).any(axis=0).all())


def cover_weight(cover: CoverFamily, s: float) -> float:
    """Σ exp(-s n_i) over the cover's balls."""
    if len(cover) == 0:
        raise ConfigError("cover weight of an empty cover is undefined")
    return float(np.exp(-s * cover.lengths.astype(float)).sum())


def target_reach(
    sys: ShiftSystem, target: PointBatch, eps: float, n_max: int, workers: int | None = None
) -> np.ndarray:
    """Reach matrix with the target points themselves as candidate centers."""
    if n_max < 1:
        raise ConfigError(f"n_max must be positive, got {n_max}")
    return bowen_reach(sys, target, target, eps, n_max, workers=workers)


def _counts(reach: np.ndarray, columns: np.ndarray, n_max: int) -> np.ndarray:
    # counts[c, n] = number of the given columns with reach[c, column] >= n
    centers = reach.shape[0]
    offsets = np.arange(centers)[:, None] * (n_max + 1)
    hist = np.bincount(
        (reach[:, columns] + offsets).ravel(), minlength=centers * (n_max + 1)
    ).reshape(centers, n_max + 1)
    return np.cumsum(hist[:, ::-1], axis=1)[:, ::-1]


def greedy_bowen_cover(
    sys: ShiftSystem,
    target: PointBatch,
    eps: float,
    N: int,
    n_max: int,
    s: float = 0.0,
    lengths: Sequence[int] | None = None,
    reach: np.ndarray | None = None,
    workers: int | None = None,
) -> CoverFamily:
    """Cover ``target`` by balls centered on target points with lengths in [N, n_max].

    Each step takes the ball with the least weight exp(-s n) per newly covered
    point; ties go to the larger n, then the lower center index.
    """
    if N < 1 or n_max < N:
        raise UncoverableError(f"no admissible ball length in [{N}, {n_max}]")
    if len(target) == 0:
        raise ConfigError("cannot cover an empty target set")
    allowed = np.unique(np.arange(N, n_max + 1) if lengths is None else lengths)
    if allowed.min() < N or allowed.max() > n_max:
        raise ConfigError(f"ball lengths {allowed.tolist()} leave [{N}, {n_max}]")
    if reach is None:
        reach = target_reach(sys, target, eps, n_max, workers)
    reach = np.minimum(reach, n_max)

    stranded = np.flatnonzero(reach.max(axis=0) < allowed.min())
    if len(stranded):
        raise UncoverableError(
            f"{len(stranded)} target points lie in no ({int(allowed.min())}, {eps})-ball; "
            "eps is below the metric error"
        )

    counts = _counts(reach, np.arange(len(target)), n_max)
    uncovered = np.ones(len(target), dtype=bool)
    centers: list[int] = []
    chosen: list[int] = []
    while uncovered.any():
        with np.errstate(divide="ignore"):
            cost = -s * allowed[None, :] - np.log(counts[:, allowed])
        best = cost.min()
        rows, cols = np.nonzero(cost <= best + _TIE * max(1.0, abs(best)))
        longest = cols.max()
        center = int(rows[cols == longest].min())
        n = int(allowed[longest])
        newly = uncovered & (reach[center] >= n)
        uncovered &= ~newly
        counts -= _counts(reach, np.flatnonzero(newly), n_max)
        centers.append(center)
        chosen.append(n)

    indices = np.asarray(centers, dtype=np.int64)
    logger.debug("greedy cover at s=%.4f: %d balls for %d points", s, len(indices), len(target))
    return CoverFamily(target.take(indices), np.asarray(chosen, dtype=np.int64), eps, indices)


def spanning_cover(sys: ShiftSystem, separated: SeparatedSet) -> CoverFamily:
    """Bowen balls around a maximal separated set, enlarged to cover its candidates."""
    radius = separated.eps * (1 + 1e-9) + 4 * separated.error
    lengths = np.full(len(separated), separated.n, dtype=np.int64)
    return CoverFamily(separated.members, lengths, radius, separated.indices)


def appendix_inequality_check(
    sys: ShiftSystem,
    separated: SeparatedSet,
    candidates: CandidateFamily | PointBatch,
    r: float,
) -> AppendixCheck:
    """Weight of the spanning cover at exponent r|log ε| against s·exp(-n r|log ε|)."""
    batch = candidates.batch if isinstance(candidates, CandidateFamily) else candidates
    cover = spanning_cover(sys, separated)
    exponent = r * abs(float(np.log(separated.eps)))
    weight = cover_weight(cover, exponent)
    bound = len(separated) * float(np.exp(-separated.n * exponent))
    covered = cover.covers(sys, batch)
    return AppendixCheck(
        passed=covered and weight <= bound * (1 + 1e-12),
        n=separated.n,
        eps=separated.eps,
        radius=cover.eps,
        exponent=exponent,
        cover_weight=weight,
        bound=bound,
        covered=covered,
    )
