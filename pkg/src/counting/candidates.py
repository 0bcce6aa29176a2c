"""Candidate families of cylinder words written on coordinates [0, depth)."""

import logging
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from src.config import settings
from src.counting.models import Mode
from src.errors import ConfigError
from src.shiftspace.points import PointBatch
from src.shiftspace.system import ShiftSystem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DepthRule:
    """Candidate depth for horizon n: n plus a margin, fixed or derived from ε.

    The "auto" margin makes the unwritten far coordinates contribute at most
    ε/4 to d_n.
    """

    margin: int | Literal["auto"] = 0

    def margin_for(self, sys: ShiftSystem, eps: float) -> int:
        if self.margin != "auto":
            return int(self.margin)
        if sys.alphabet.diam == 0:
            return 0
        return max(0, math.ceil(math.log2(4 * sys.alphabet.diam / eps)))

    def depth(self, sys: ShiftSystem, n: int, eps: float) -> int:
        return n + self.margin_for(sys, eps)


@dataclass(frozen=True, eq=False)
class CandidateFamily:
    batch: PointBatch
    depth: int
    mode: Mode
    sample_size: int | None = None

    def __len__(self) -> int:
        return len(self.batch)


def enumerate_candidates(
    sys: ShiftSystem,
    n: int,
    depth: int,
    symbols: np.ndarray | None = None,
    cap: int | None = None,
    sample_size: int | None = None,
    seed: int | None = None,
) -> CandidateFamily:
    """All words over ``symbols`` on [0, depth), lexicographic with coordinate 0 first.

    Above ``cap`` words the family is a seeded uniform sample instead, tagged
    as sampled with its declared size.
    """
    if depth < n or depth < 0:
        raise ConfigError(f"candidate depth {depth} must be >= horizon {n} and >= 0")
    cap = settings.CANDIDATE_CAP if cap is None else cap
    sample_size = settings.SAMPLE_SIZE if sample_size is None else sample_size
    alphabet_symbols = np.arange(sys.alphabet.size)
    symbols = alphabet_symbols if symbols is None else np.asarray(symbols, np.int64)
    tail = sys.alphabet.tail_symbol
    k = len(symbols)

    if depth == 0:
        return CandidateFamily(PointBatch(np.zeros((1, 0), np.int64), 0, tail), 0, "exact")
    if k**depth <= cap:
        digits = np.indices((k,) * depth).reshape(depth, -1).T
        return CandidateFamily(PointBatch(symbols[digits], 0, tail), depth, "exact")

    rng = np.random.default_rng(settings.SEED if seed is None else seed)
    digits = np.unique(rng.integers(0, k, size=(sample_size, depth)), axis=0)
    logger.warning(
        "%d^%d words exceed the cap %d; sampling %d candidates", k, depth, cap, sample_size
    )
    return CandidateFamily(
        PointBatch(symbols[digits], 0, tail), depth, "sampled", sample_size
    )
