"""Maximal (n, ε)-separated subsets of candidate families."""

import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np

from src.config import settings
from src.counting.candidates import CandidateFamily
from src.counting.models import Mode, SpanningReport, Strategy
from src.errors import ConfigError, StrategyInfeasibleError
from src.shiftspace.points import PointBatch, SymbolicPoint
from src.shiftspace.system import ShiftSystem, bowen_distances, pairwise_bowen

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SeparatedSet:
    """Members are pairwise d_n-separated: d_n - eps > 2 * error for every pair."""

    n: int
    eps: float
    members: PointBatch
    indices: np.ndarray
    strategy: Strategy
    error: float
    candidate_mode: Mode = "exact"

    def __len__(self) -> int:
        return len(self.members)

    @property
    def points(self) -> list[SymbolicPoint]:
        return self.members.points()


def _as_family(candidates: CandidateFamily | PointBatch) -> CandidateFamily:
    if isinstance(candidates, CandidateFamily):
        return candidates
    return CandidateFamily(candidates, candidates.hi + 1, "exact")


def _greedy_indices(
    sys: ShiftSystem, batch: PointBatch, n: int, threshold: float
) -> list[int]:
    # a candidate is blocked once an earlier kept member lies within threshold
    blocked = np.zeros(len(batch), dtype=bool)
    kept: list[int] = []
    for index in range(len(batch)):
        if blocked[index]:
            continue
        kept.append(index)
        distances, _ = bowen_distances(sys, batch.take([index]), batch, n)
        blocked |= distances <= threshold
    return kept


def _exact_indices(
    sys: ShiftSystem, batch: PointBatch, n: int, threshold: float, workers: int | None
) -> list[int]:
    distances, _ = pairwise_bowen(sys, batch, n, workers)
    graph = nx.Graph()
    graph.add_nodes_from(range(len(batch)))
    rows, cols = np.nonzero(np.triu(distances <= threshold, k=1))
    graph.add_edges_from(zip(rows.tolist(), cols.tolist(), strict=True))

    kept: list[int] = []
    for component in sorted(nx.connected_components(graph), key=min):
        if len(component) == 1:
            kept.extend(component)
            continue
        # a maximum independent set is a maximum clique of the complement
        complement = nx.complement(graph.subgraph(component))
        clique, _ = nx.max_weight_clique(complement, weight=None)
        kept.extend(clique)
    return sorted(kept)


def maximal_separated(
    sys: ShiftSystem,
    candidates: CandidateFamily | PointBatch,
    n: int,
    eps: float,
    strategy: Strategy = "greedy",
    workers: int | None = None,
) -> SeparatedSet:
    """Greedy scan in candidate order, or a maximum independent set of the
    non-separation graph for at most ``EXACT_SEPARATED_MAX_CANDIDATES`` candidates."""
    family = _as_family(candidates)
    batch = family.batch
    error = sys.slack
    if eps <= 2 * error:
        raise ConfigError(f"eps={eps} does not exceed twice the metric error {error}")
    threshold = eps + 2 * error

    if strategy == "exact":
        if len(batch) > settings.EXACT_SEPARATED_MAX_CANDIDATES:
            raise StrategyInfeasibleError(
                f"exact separated sets are capped at "
                f"{settings.EXACT_SEPARATED_MAX_CANDIDATES} candidates, got {len(batch)}"
            )
        kept = _exact_indices(sys, batch, n, threshold, workers)
    elif strategy == "greedy":
        kept = _greedy_indices(sys, batch, n, threshold)
    else:
        raise ConfigError(f"Unknown separation strategy: {strategy}")

    logger.debug("n=%d eps=%.6g: %d of %d kept", n, eps, len(kept), len(batch))
    indices = np.asarray(kept, dtype=np.int64)
    return SeparatedSet(
        n=n,
        eps=eps,
        members=batch.take(indices),
        indices=indices,
        strategy=strategy,
        error=error,
        candidate_mode=family.mode,
    )


def spanning_check(
    sys: ShiftSystem,
    separated: SeparatedSet,
    candidates: CandidateFamily | PointBatch,
) -> SpanningReport:
    """Check that every candidate lies within d_n <= eps of some member."""
    batch = _as_family(candidates).batch
    nearest = np.full(len(batch), np.inf)
    for index in range(len(separated)):
        distances, _ = bowen_distances(
            sys, separated.members.take([index]), batch, separated.n
        )
        nearest = np.minimum(nearest, distances)
    worst = float(nearest.max()) if len(batch) else 0.0
    return SpanningReport(
        passed=worst <= separated.eps + 2 * separated.error,
        n=separated.n,
        eps=separated.eps,
        worst_distance=worst,
        candidates_checked=len(batch),
    )
