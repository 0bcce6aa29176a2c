"""Finite metric point clouds standing in for compact alphabets."""

import logging
import string
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.spatial.distance import cdist

from src.config import settings
from src.errors import ConfigError
from src.metricspace.models import AlphabetDocument, MetricReport, MetricViolation

logger = logging.getLogger(__name__)

_ROW_CHUNK = 512


@dataclass(frozen=True, eq=False)
class Alphabet:
    """A finite metric space with a designated tail symbol.

    Exactly one of ``coords`` (cityblock metric on the rows) and ``matrix``
    (explicit distance table) is set. ``resolution`` is the spacing of the
    discretization: every point of the compact space is that close to the cloud.
    """

    labels: tuple[str, ...]
    coords: np.ndarray | None = None
    matrix: np.ndarray | None = None
    tail_symbol: int = 0
    valuation: np.ndarray | None = None
    resolution: float = 0.0
    kind: str = "dense"
    params: dict = field(default_factory=dict)
    factors: tuple["Alphabet", ...] = ()

    def __post_init__(self):
        if (self.coords is None) == (self.matrix is None):
            raise ConfigError("Alphabet needs exactly one of coords or matrix")
        size = len(self.labels)
        if size == 0:
            raise ConfigError("Alphabet must have at least one symbol")
        if self.coords is not None and self.coords.shape[0] != size:
            raise ConfigError(
                f"coords has {self.coords.shape[0]} rows for {size} labels"
            )
        if self.matrix is not None and self.matrix.shape != (size, size):
            raise ConfigError(
                f"matrix shape {self.matrix.shape} does not match {size} labels"
            )
        if not 0 <= self.tail_symbol < size:
            raise ConfigError(f"tail symbol {self.tail_symbol} outside 0..{size - 1}")
        if self.valuation is not None and self.valuation.shape != (size,):
            raise ConfigError(
                f"valuation has shape {self.valuation.shape}, expected ({size},)"
            )

    @property
    def size(self) -> int:
        return len(self.labels)

    def distance(self, a, b) -> np.ndarray:
        """Elementwise distances between broadcastable symbol index arrays."""
        a = np.asarray(a)
        b = np.asarray(b)
        if self.coords is not None:
            return np.abs(self.coords[a] - self.coords[b]).sum(axis=-1)
        return self.matrix[a, b].astype(float)

    def rows(self, symbols) -> np.ndarray:
        """Distances from each of ``symbols`` to every symbol."""
        symbols = np.atleast_1d(np.asarray(symbols))
        if self.coords is not None:
            return cdist(self.coords[symbols], self.coords, "cityblock")
        return self.matrix[symbols].astype(float)

    @cached_property
    def distance_matrix(self) -> np.ndarray:
        return self.rows(np.arange(self.size))

    @cached_property
    def diam(self) -> float:
        if self.size <= 1:
            return 0.0
        if self.coords is not None and self.coords.shape[1] == 1:
            return float(np.ptp(self.coords[:, 0]))
        if self.matrix is not None:
            return float(self.matrix.max())
        best = 0.0
        for start in range(0, self.size, _ROW_CHUNK):
            block = self.rows(np.arange(start, min(start + _ROW_CHUNK, self.size)))
            best = max(best, float(block.max()))
        return best

    def symbol(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ConfigError(f"Unknown symbol label: {label}") from None


def _labels(size: int) -> tuple[str, ...]:
    if size <= len(string.ascii_lowercase):
        return tuple(string.ascii_lowercase[:size])
    return tuple(f"s{i}" for i in range(size))


def interval_grid(points: int = 4097, lo: float = 0.0, hi: float = 1.0) -> Alphabet:
    """Uniform grid of ``[lo, hi]`` with the absolute-value metric."""
    if points < 2 or hi <= lo:
        raise ConfigError(f"interval_grid needs points >= 2 and lo < hi, got {points}")
    xs = np.linspace(lo, hi, points)
    return Alphabet(
        labels=tuple(f"x{i}" for i in range(points)),
        coords=xs[:, None],
        valuation=xs.copy(),
        resolution=(hi - lo) / (points - 1),
        kind="interval_grid",
        params={"points": points, "lo": lo, "hi": hi},
    )


def cantor(depth: int = 8) -> Alphabet:
    """Left endpoints of the depth-level intervals of the middle-third Cantor set."""
    if depth < 0:
        raise ConfigError(f"cantor depth must be >= 0, got {depth}")
    digits = np.indices((2,) * depth).reshape(depth, -1).T if depth else np.zeros((1, 0))
    weights = 2.0 * 3.0 ** -np.arange(1, depth + 1)
    xs = digits @ weights
    return Alphabet(
        labels=tuple(f"c{i}" for i in range(len(xs))),
        coords=xs[:, None],
        valuation=xs.copy(),
        resolution=3.0**-depth,
        kind="cantor",
        params={"depth": depth},
    )


def discrete(
    size: int = 2,
    labels: list[str] | None = None,
    valuation: list[float] | None = None,
    tail_symbol: int = 0,
) -> Alphabet:
    """``size`` symbols at mutual distance 1."""
    if size < 1:
        raise ConfigError(f"discrete alphabet needs size >= 1, got {size}")
    names = tuple(labels) if labels else _labels(size)
    if len(names) != size:
        raise ConfigError(f"{len(names)} labels given for {size} symbols")
    if valuation is None:
        values = np.linspace(0.0, 1.0, size) if size > 1 else np.zeros(1)
    else:
        values = np.asarray(valuation, dtype=float)
    return Alphabet(
        labels=names,
        matrix=1.0 - np.eye(size),
        tail_symbol=tail_symbol,
        valuation=values,
        kind="discrete",
        params={"size": size},
    )


def single_point() -> Alphabet:
    return Alphabet(
        labels=("p",),
        coords=np.zeros((1, 1)),
        valuation=np.zeros(1),
        kind="single_point",
    )


def dense(
    matrix: list[list[float]],
    labels: list[str] | None = None,
    valuation: list[float] | None = None,
    tail_symbol: int = 0,
) -> Alphabet:
    """User-supplied distance table. The only generator that may fail verify_metric."""
    table = np.asarray(matrix, dtype=float)
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise ConfigError(f"dense alphabet needs a square matrix, got {table.shape}")
    return Alphabet(
        labels=tuple(labels) if labels else _labels(table.shape[0]),
        matrix=table,
        tail_symbol=tail_symbol,
        valuation=None if valuation is None else np.asarray(valuation, dtype=float),
        kind="dense",
    )


def product_alphabet(first: Alphabet, second: Alphabet) -> Alphabet:
    """Cartesian product with the sum metric; symbol (i, j) has index i*|B| + j."""
    n, m = first.size, second.size
    labels = tuple(f"{a}|{b}" for a in first.labels for b in second.labels)
    coords = matrix = None
    if first.coords is not None and second.coords is not None:
        coords = np.hstack(
            [np.repeat(first.coords, m, axis=0), np.tile(second.coords, (n, 1))]
        )
    else:
        matrix = (
            first.distance_matrix[:, None, :, None]
            + second.distance_matrix[None, :, None, :]
        ).reshape(n * m, n * m)
    valuation = None
    if first.valuation is not None and second.valuation is not None:
        valuation = (first.valuation[:, None] + second.valuation[None, :]).ravel()
    return Alphabet(
        labels=labels,
        coords=coords,
        matrix=matrix,
        tail_symbol=first.tail_symbol * m + second.tail_symbol,
        valuation=valuation,
        resolution=first.resolution + second.resolution,
        kind="product",
        factors=(first, second),
    )


def verify_metric(space: Alphabet, seed: int | None = None) -> MetricReport:
    """List every metric-axiom violation of the cloud.

    Clouds above ``METRIC_CHECK_MAX_POINTS`` are checked on seeded random
    triples and the report is flagged as not exhaustive.
    """
    tol = settings.NUMERIC_SLACK
    violations: list[MetricViolation] = []
    if space.size <= settings.METRIC_CHECK_MAX_POINTS:
        table = space.distance_matrix
        for i in np.flatnonzero(np.abs(np.diag(table)) > tol):
            violations.append(
                MetricViolation(
                    kind="diagonal", symbols=[int(i)], excess=float(table[i, i])
                )
            )
        for i, j in np.argwhere(table < -tol):
            violations.append(
                MetricViolation(
                    kind="negative", symbols=[int(i), int(j)], excess=float(-table[i, j])
                )
            )
        for i, j in np.argwhere(np.triu(np.abs(table - table.T) > tol, k=1)):
            violations.append(
                MetricViolation(
                    kind="asymmetry",
                    symbols=[int(i), int(j)],
                    excess=float(abs(table[i, j] - table[j, i])),
                )
            )
        for r in range(space.size):
            excess = table - (table[:, r, None] + table[None, r, :])
            for p, q in np.argwhere(excess > tol):
                violations.append(
                    MetricViolation(
                        kind="triangle",
                        symbols=[int(p), r, int(q)],
                        excess=float(excess[p, q]),
                    )
                )
        triples = space.size**3
        exhaustive = True
    else:
        rng = np.random.default_rng(settings.SEED if seed is None else seed)
        p, r, q = rng.integers(0, space.size, size=(3, settings.METRIC_CHECK_SAMPLES))
        d_pq = space.distance(p, q)
        d_qp = space.distance(q, p)
        excess = d_pq - (space.distance(p, r) + space.distance(r, q))
        for idx in np.flatnonzero(excess > tol):
            violations.append(
                MetricViolation(
                    kind="triangle",
                    symbols=[int(p[idx]), int(r[idx]), int(q[idx])],
                    excess=float(excess[idx]),
                )
            )
        for idx in np.flatnonzero(np.abs(d_pq - d_qp) > tol):
            violations.append(
                MetricViolation(
                    kind="asymmetry",
                    symbols=[int(p[idx]), int(q[idx])],
                    excess=float(abs(d_pq[idx] - d_qp[idx])),
                )
            )
        self_dist = space.distance(p, p)
        for idx in np.flatnonzero(np.abs(self_dist) > tol):
            violations.append(
                MetricViolation(
                    kind="diagonal", symbols=[int(p[idx])], excess=float(self_dist[idx])
                )
            )
        triples = settings.METRIC_CHECK_SAMPLES
        exhaustive = False
    if violations:
        logger.warning("Metric check found %d violations", len(violations))
    return MetricReport(
        passed=not violations,
        size=space.size,
        exhaustive=exhaustive,
        triples_checked=triples,
        violations=violations,
    )


def to_document(space: Alphabet) -> AlphabetDocument:
    return AlphabetDocument(
        kind=space.kind,
        params=dict(space.params),
        labels=list(space.labels),
        tail_symbol=space.tail_symbol,
        valuation=None if space.valuation is None else space.valuation.tolist(),
        matrix=space.matrix.tolist() if space.kind == "dense" else None,
        factors=[to_document(factor) for factor in space.factors],
    )


def from_document(doc: AlphabetDocument) -> Alphabet:
    if doc.kind == "dense":
        if doc.matrix is None:
            raise ConfigError("dense alphabet document is missing its matrix")
        space = dense(doc.matrix, labels=doc.labels, tail_symbol=doc.tail_symbol)
    elif doc.kind == "product":
        if len(doc.factors) != 2:
            raise ConfigError("product alphabet document needs exactly two factors")
        space = product_alphabet(*(from_document(f) for f in doc.factors))
    else:
        from src.metricspace import build_alphabet

        space = build_alphabet(doc.kind, **doc.params)
    if len(space.labels) != len(doc.labels):
        raise ConfigError(
            f"document lists {len(doc.labels)} labels, generator produced {space.size}"
        )
    valuation = None if doc.valuation is None else np.asarray(doc.valuation, float)
    return Alphabet(
        labels=tuple(doc.labels),
        coords=space.coords,
        matrix=space.matrix,
        tail_symbol=doc.tail_symbol,
        valuation=valuation,
        resolution=space.resolution,
        kind=space.kind,
        params=space.params,
        factors=space.factors,
    )


def dump_alphabet(space: Alphabet) -> str:
    return to_document(space).model_dump_json(indent=2)


def load_alphabet(text: str) -> Alphabet:
    return from_document(AlphabetDocument.model_validate_json(text))
