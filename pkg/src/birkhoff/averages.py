"""Birkhoff averages and deviation sets."""

import logging

import numpy as np
from scipy.optimize import brentq
from scipy.special import softmax

from src.birkhoff.models import DeviationSpec
from src.config import settings
from src.counting.candidates import CandidateFamily
from src.counting.models import Strategy
from src.counting.separated import SeparatedSet, maximal_separated
from src.errors import EmptyDeviationError
from src.shiftspace.observables import Observable
from src.shiftspace.points import PointBatch, SymbolicPoint, as_batch
from src.shiftspace.system import ShiftSystem

logger = logging.getLogger(__name__)


def birkhoff_averages(
    phi: Observable, points: SymbolicPoint | PointBatch, n: int
) -> np.ndarray:
    return phi.orbit_values(points, n).mean(axis=1)


def birkhoff_average(
    sys: ShiftSystem, phi: Observable, x: SymbolicPoint, n: int
) -> float:
    """(1/n) Σ_{i<n} φ(σ^i x)."""
    sys.check_point(x)
    return float(birkhoff_averages(phi, x, n)[0])


def _batch_of(candidates: CandidateFamily | PointBatch) -> PointBatch:
    if isinstance(candidates, CandidateFamily):
        return candidates.batch
    return as_batch(candidates)


def deviation_mask(
    phi: Observable, candidates: CandidateFamily | PointBatch, spec: DeviationSpec
) -> np.ndarray:
    batch = _batch_of(candidates)
    return np.abs(birkhoff_averages(phi, batch, spec.n) - spec.alpha) < spec.err


def deviation_members(
    sys: ShiftSystem,
    phi: Observable,
    candidates: CandidateFamily | PointBatch,
    spec: DeviationSpec,
) -> PointBatch:
    batch = _batch_of(candidates)
    sys.check_point(batch)
    return batch.take(np.flatnonzero(deviation_mask(phi, batch, spec)))


def separated_in_deviation(
    sys: ShiftSystem,
    phi: Observable,
    spec: DeviationSpec,
    eps: float,
    candidates: CandidateFamily | PointBatch,
    strategy: Strategy = "greedy",
) -> SeparatedSet:
    """Maximal (n, eps)-separated subset of the deviation members."""
    members = deviation_members(sys, phi, candidates, spec)
    if len(members) == 0:
        raise EmptyDeviationError(
            f"no candidate has a length-{spec.n} average within {spec.err} of {spec.alpha}"
        )
    mode = candidates.mode if isinstance(candidates, CandidateFamily) else "exact"
    family = CandidateFamily(members, spec.n, mode)
    return maximal_separated(sys, family, spec.n, eps, strategy)


def symbol_values(phi: Observable, size: int) -> np.ndarray:
    """φ at each constant point."""
    blocks = np.repeat(np.arange(size)[:, None], 2 * phi.radius + 1, axis=1)
    return phi.evaluator(blocks)


def tilted_weights(values: np.ndarray, alpha: float) -> np.ndarray:
    """Symbol distribution q ∝ exp(θ v) whose mean of v equals alpha."""
    low, high = float(values.min()), float(values.max())
    if not low <= alpha <= high:
        raise EmptyDeviationError(f"target {alpha} lies outside [{low}, {high}]")
    if low == high:
        return np.full(len(values), 1 / len(values))
    if alpha in (low, high):
        mask = values == alpha
        return mask / mask.sum()
    centered = (values - values.mean()) / (high - low)

    def excess(theta: float) -> float:
        return float(softmax(theta * centered) @ values) - alpha

    bound = 1.0
    while excess(-bound) > 0 or excess(bound) < 0:
        bound *= 2
    theta = brentq(excess, -bound, bound, xtol=1e-12)
    return softmax(theta * centered)


def sample_deviation_candidates(
    sys: ShiftSystem,
    phi: Observable,
    spec: DeviationSpec,
    size: int,
    seed: int | None = None,
    max_draws: int | None = None,
) -> CandidateFamily:
    """Distinct deviation members drawn from the product measure tilted toward alpha.

    Stops after ``size`` members or ``max_draws`` words, whichever comes first.
    """
    max_draws = 64 * size if max_draws is None else max_draws
    rng = np.random.default_rng(settings.SEED if seed is None else seed)
    weights = tilted_weights(symbol_values(phi, sys.alphabet.size), spec.alpha)
    tail = sys.alphabet.tail_symbol
    kept: list[np.ndarray] = []
    seen: set[bytes] = set()
    drawn = 0
    while drawn < max_draws and len(kept) < size:
        chunk = min(size, max_draws - drawn)
        words = rng.choice(sys.alphabet.size, size=(chunk, spec.n), p=weights)
        drawn += chunk
        mask = deviation_mask(phi, PointBatch(words, 0, tail), spec)
        for word in words[mask]:
            key = word.tobytes()
            if key not in seen and len(kept) < size:
                seen.add(key)
                kept.append(word)
    logger.debug(
        "sampled %d deviation words of length %d in %d draws", len(kept), spec.n, drawn
    )
    words = np.vstack(kept) if kept else np.zeros((0, spec.n), dtype=np.int64)
    batch = PointBatch(words.astype(np.int64), 0, tail)
    return CandidateFamily(batch, spec.n, "sampled", size)
