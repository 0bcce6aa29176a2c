"""Continuous observables depending on a finite window of coordinates."""

from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from src.errors import ConfigError
from src.metricspace.alphabet import Alphabet
from src.shiftspace.points import PointBatch, SymbolicPoint, as_batch

_ROW_CHUNK = 512


@dataclass(frozen=True, eq=False)
class Observable:
    """φ evaluated on blocks of symbols at coordinates ``-radius..radius``.

    ``evaluator`` maps an integer array of shape (..., 2*radius + 1) to values
    of shape (...). ``modulus`` returns an upper bound of var(φ, ε), the largest
    |φ(w) - φ(z)| over pairs with d'(w, z) < ε.
    """

    name: str
    radius: int
    evaluator: Callable[[np.ndarray], np.ndarray]
    sup_norm: float
    value_range: tuple[float, float]
    modulus: Callable[[float], float]

    @property
    def is_constant(self) -> bool:
        return self.value_range[0] == self.value_range[1]

    def modulus_table(self, eps_grid: Sequence[float]) -> dict[float, float]:
        return {float(eps): self.modulus(float(eps)) for eps in eps_grid}

    def orbit_values(self, points: SymbolicPoint | PointBatch, n: int) -> np.ndarray:
        """φ(σ^i x) for i < n, one row per point."""
        batch = as_batch(points)
        rows = batch.aligned(-self.radius, n - 1 + self.radius)
        blocks = sliding_window_view(rows, 2 * self.radius + 1, axis=1)
        return self.evaluator(blocks)

    def __call__(self, point: SymbolicPoint) -> float:
        return float(self.orbit_values(point, 1)[0, 0])


def symbol_modulus(alphabet: Alphabet, values: np.ndarray, eps: float) -> float:
    """Largest |v(a) - v(b)| over symbol pairs with d(a, b) < eps."""
    best = 0.0
    for start in range(0, alphabet.size, _ROW_CHUNK):
        chunk = np.arange(start, min(start + _ROW_CHUNK, alphabet.size))
        close = alphabet.rows(chunk) < eps
        spread = np.abs(values[chunk, None] - values[None, :])
        best = max(best, float(np.where(close, spread, 0.0).max()))
    return best


def _valuation(alphabet: Alphabet) -> np.ndarray:
    if alphabet.valuation is None:
        raise ConfigError(f"alphabet of kind {alphabet.kind} has no valuation table")
    return alphabet.valuation


def coordinate_valuation(alphabet: Alphabet) -> Observable:
    """φ(x) = v(x_0)."""
    values = _valuation(alphabet)
    return Observable(
        name="coordinate_valuation",
        radius=0,
        evaluator=lambda blocks: values[blocks[..., 0]],
        sup_norm=float(np.abs(values).max()),
        value_range=(float(values.min()), float(values.max())),
        modulus=lambda eps: symbol_modulus(alphabet, values, eps),
    )


def windowed_observable(alphabet: Alphabet, weights: Sequence[float]) -> Observable:
    """φ(x) = Σ_k c_k v(x_k) over an odd-length window of weights centered at 0.

    A coordinate-k disagreement costs at least 2^{-|k|} d(x_k, y_k) in d', so
    the modulus sums the symbol moduli at the rescaled radii.
    """
    coefficients = np.asarray(weights, dtype=float)
    if coefficients.ndim != 1 or len(coefficients) % 2 == 0:
        raise ConfigError(f"window weights need odd length, got {len(coefficients)}")
    values = _valuation(alphabet)
    radius = len(coefficients) // 2
    offsets = np.abs(np.arange(-radius, radius + 1))
    positive = coefficients.clip(min=0).sum()
    negative = coefficients.clip(max=0).sum()
    low = positive * values.min() + negative * values.max()
    high = positive * values.max() + negative * values.min()

    def modulus(eps: float) -> float:
        return float(
            sum(
                abs(c) * symbol_modulus(alphabet, values, eps * 2.0**k)
                for c, k in zip(coefficients, offsets, strict=True)
                if c != 0
            )
        )

    return Observable(
        name="windowed_valuation",
        radius=radius,
        evaluator=lambda blocks: values[blocks] @ coefficients,
        sup_norm=float(np.abs(coefficients).sum() * np.abs(values).max()),
        value_range=(float(low), float(high)),
        modulus=modulus,
    )


def constant_observable(value: float) -> Observable:
    return Observable(
        name="constant",
        radius=0,
        evaluator=lambda blocks: np.full(blocks.shape[:-1], float(value)),
        sup_norm=abs(float(value)),
        value_range=(float(value), float(value)),
        modulus=lambda eps: 0.0,
    )
