"""The full shift over an alphabet with the weighted product metric and Bowen metrics."""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import lfilter

from src.config import settings
from src.errors import ConfigError
from src.metricspace.alphabet import Alphabet, product_alphabet
from src.parallel import ordered_map
from src.shiftspace.points import PointBatch, SymbolicPoint, as_batch

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ShiftSystem:
    alphabet: Alphabet
    truncation_radius: int = field(default_factory=lambda: settings.TRUNCATION_RADIUS)

    def __post_init__(self):
        if self.truncation_radius < 1:
            raise ConfigError(
                f"truncation radius must be positive, got {self.truncation_radius}"
            )

    @property
    def tail_error(self) -> float:
        """Bound on the metric contribution of coordinates beyond the truncation radius."""
        return 4 * self.alphabet.diam * 2.0**-self.truncation_radius

    @property
    def slack(self) -> float:
        return settings.NUMERIC_SLACK * max(1.0, self.alphabet.diam)

    def tail_point(self) -> SymbolicPoint:
        return SymbolicPoint.constant(self.alphabet.tail_symbol)

    def check_point(self, point: SymbolicPoint | PointBatch) -> None:
        batch = as_batch(point)
        size = self.alphabet.size
        if batch.tail >= size or (batch.words.size and batch.words.max() >= size):
            raise ConfigError(f"point uses a symbol outside the {size}-symbol alphabet")


def product_system(first: ShiftSystem, second: ShiftSystem) -> ShiftSystem:
    """Diagonal shift on the product alphabet with the summed metric."""
    if first.truncation_radius != second.truncation_radius:
        raise ConfigError(
            "product systems need a shared truncation radius, got "
            f"{first.truncation_radius} and {second.truncation_radius}"
        )
    return ShiftSystem(
        product_alphabet(first.alphabet, second.alphabet), first.truncation_radius
    )


def pair_point(second_size: int, x: SymbolicPoint, y: SymbolicPoint) -> SymbolicPoint:
    """The product-system point whose coordinates are the pairs (x_n, y_n)."""
    lo, hi = min(x.lo, y.lo), max(x.hi, y.hi)
    word = x.segment(lo, hi) * second_size + y.segment(lo, hi)
    return SymbolicPoint.from_window(lo, word.tolist(), x.tail * second_size + y.tail)


def weighted_sums(diff: np.ndarray) -> np.ndarray:
    """Entry i is the sum over j of diff[..., j] * 2^-|i - j|."""
    forward = lfilter([1.0], [1.0, -0.5], diff, axis=-1)
    backward = lfilter([1.0], [1.0, -0.5], diff[..., ::-1], axis=-1)[..., ::-1]
    return forward + backward - diff


def bowen_profile(
    sys: ShiftSystem,
    first: SymbolicPoint | PointBatch,
    second: SymbolicPoint | PointBatch,
    n: int,
) -> tuple[np.ndarray, float]:
    """Product-metric distances d'(σ^i x, σ^i y) for i < n, one row per pair.

    Rows of a one-point side broadcast against the other side. The returned
    error bounds the true distance from above: it is exact up to float slack
    when tails agree, and carries the truncation bound otherwise.
    """
    if n < 1:
        raise ConfigError(f"orbit length must be positive, got {n}")
    a, b = as_batch(first), as_batch(second)
    lo, hi = min(a.lo, b.lo, 0), max(a.hi, b.hi, n - 1)
    error = sys.slack
    if a.tail != b.tail:
        lo -= sys.truncation_radius
        hi += sys.truncation_radius
        error += sys.tail_error
    diff = sys.alphabet.distance(a.aligned(lo, hi), b.aligned(lo, hi))
    return weighted_sums(diff)[:, -lo : -lo + n], error


def product_metric(
    sys: ShiftSystem, x: SymbolicPoint, y: SymbolicPoint
) -> tuple[float, float]:
    profile, error = bowen_profile(sys, x, y, 1)
    return float(profile[0, 0]), error


def bowen_metric(
    sys: ShiftSystem, x: SymbolicPoint, y: SymbolicPoint, n: int
) -> tuple[float, float]:
    profile, error = bowen_profile(sys, x, y, n)
    return float(profile[0].max()), error


def bowen_distances(
    sys: ShiftSystem, x: SymbolicPoint | PointBatch, ys: PointBatch, n: int
) -> tuple[np.ndarray, float]:
    """d_n from x to every row of ``ys``."""
    profile, error = bowen_profile(sys, x, ys, n)
    return profile.max(axis=1), error


def pairwise_bowen(
    sys: ShiftSystem, batch: PointBatch, n: int, workers: int | None = None
) -> tuple[np.ndarray, float]:
    """Symmetric matrix of d_n over all pairs of rows."""

    def row(index: int) -> np.ndarray:
        return bowen_distances(sys, batch.take([index]), batch, n)[0]

    rows = ordered_map(row, range(len(batch)), workers)
    matrix = np.vstack(rows) if rows else np.zeros((0, 0))
    # one batch shares one tail, so only float slack enters
    return np.maximum(matrix, matrix.T), sys.slack


def bowen_reach(
    sys: ShiftSystem,
    centers: PointBatch,
    targets: PointBatch,
    eps: float,
    n_max: int,
    certified: bool = True,
    workers: int | None = None,
) -> np.ndarray:
    """Entry (c, y) is the largest n <= n_max with y in the Bowen ball B_n(c, eps).

    Certified membership demands d_n + error < eps. With ``certified=False``
    the test is d_n - error < eps, which can only over-count.
    """

    def row(index: int) -> np.ndarray:
        profile, error = bowen_profile(sys, centers.take([index]), targets, n_max)
        running = np.maximum.accumulate(profile, axis=1)
        margin = error if certified else -error
        return (running + margin < eps).sum(axis=1)

    rows = ordered_map(row, range(len(centers)), workers)
    if not rows:
        return np.zeros((0, len(targets)), dtype=np.int64)
    return np.vstack(rows).astype(np.int64)
