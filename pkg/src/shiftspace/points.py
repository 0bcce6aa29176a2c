"""Finitely supported points of the two-sided shift."""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from src.errors import ConfigError


class SymbolicPoint(BaseModel):
    """A bi-infinite sequence equal to ``tail`` outside the window ``[lo, hi]``.

    Points are stored canonically: the window is the smallest one containing
    coordinate 0 and every non-tail coordinate, so equal sequences compare equal.
    """

    model_config = ConfigDict(frozen=True)

    lo: int
    hi: int
    word: tuple[int, ...]
    tail: int

    @model_validator(mode="before")
    @classmethod
    def _canonical(cls, data):
        if not isinstance(data, dict):
            return data
        word = np.asarray(data["word"], dtype=np.int64).reshape(-1)
        tail = int(data["tail"])
        lo = int(data["lo"])
        hi = int(data.get("hi", lo + len(word) - 1))
        if hi - lo + 1 != len(word):
            raise ValueError(f"window [{lo}, {hi}] does not match word length {len(word)}")
        if tail < 0 or (word < 0).any():
            raise ValueError("symbol indices must be nonnegative")
        support = np.flatnonzero(word != tail) + lo
        new_lo = min(0, int(support[0])) if len(support) else 0
        new_hi = max(0, int(support[-1])) if len(support) else 0
        canonical = np.full(new_hi - new_lo + 1, tail, dtype=np.int64)
        start, stop = max(lo, new_lo), min(hi, new_hi)
        if start <= stop:
            canonical[start - new_lo : stop - new_lo + 1] = word[start - lo : stop - lo + 1]
        return {
            "lo": new_lo,
            "hi": new_hi,
            "word": tuple(int(s) for s in canonical),
            "tail": tail,
        }

    @classmethod
    def from_window(cls, lo: int, symbols: Sequence[int], tail: int) -> "SymbolicPoint":
        return cls(lo=lo, hi=lo + len(symbols) - 1, word=tuple(symbols), tail=tail)

    @classmethod
    def constant(cls, symbol: int) -> "SymbolicPoint":
        return cls(lo=0, hi=0, word=(symbol,), tail=symbol)

    def at(self, coordinate: int) -> int:
        if self.lo <= coordinate <= self.hi:
            return self.word[coordinate - self.lo]
        return self.tail

    def segment(self, lo: int, hi: int) -> np.ndarray:
        """Symbols on coordinates ``lo..hi``."""
        return PointBatch.single(self).aligned(lo, hi)[0]

    def to_line(self) -> str:
        return f"{self.lo} {self.hi} {self.tail} : {' '.join(map(str, self.word))}"

    @classmethod
    def from_line(cls, line: str) -> "SymbolicPoint":
        try:
            head, body = line.split(":", 1)
            lo, hi, tail = (int(v) for v in head.split())
            word = tuple(int(v) for v in body.split())
        except ValueError as exc:
            raise ConfigError(f"Malformed point line: {line!r}") from exc
        return cls(lo=lo, hi=hi, word=word, tail=tail)


@dataclass(frozen=True, eq=False)
class PointBatch:
    """Many points sharing one window start and one tail symbol, stored row-wise."""

    words: np.ndarray
    lo: int
    tail: int

    def __post_init__(self):
        if self.words.ndim != 2:
            raise ConfigError(f"PointBatch words must be 2-D, got {self.words.shape}")

    def __len__(self) -> int:
        return self.words.shape[0]

    @property
    def hi(self) -> int:
        return self.lo + self.words.shape[1] - 1

    def aligned(self, lo: int, hi: int) -> np.ndarray:
        """Rows restricted or tail-padded to coordinates ``lo..hi``."""
        out = np.full((len(self), hi - lo + 1), self.tail, dtype=np.int64)
        start, stop = max(lo, self.lo), min(hi, self.hi)
        if start <= stop:
            out[:, start - lo : stop - lo + 1] = self.words[
                :, start - self.lo : stop - self.lo + 1
            ]
        return out

    def point(self, index: int) -> SymbolicPoint:
        return SymbolicPoint.from_window(self.lo, self.words[index].tolist(), self.tail)

    def points(self) -> list[SymbolicPoint]:
        return [self.point(i) for i in range(len(self))]

    def take(self, indices) -> "PointBatch":
        return PointBatch(self.words[np.asarray(indices, dtype=np.int64)], self.lo, self.tail)

    @classmethod
    def single(cls, point: SymbolicPoint) -> "PointBatch":
        return cls(np.asarray([point.word], dtype=np.int64), point.lo, point.tail)

    @classmethod
    def from_points(cls, points: Sequence[SymbolicPoint]) -> "PointBatch":
        if not points:
            raise ConfigError("cannot batch an empty point list")
        tails = {p.tail for p in points}
        if len(tails) != 1:
            raise ConfigError(f"batched points must share one tail, got {sorted(tails)}")
        lo = min(p.lo for p in points)
        hi = max(p.hi for p in points)
        words = np.vstack([cls.single(p).aligned(lo, hi) for p in points])
        return cls(words, lo, tails.pop())


def as_batch(points: "SymbolicPoint | PointBatch") -> PointBatch:
    if isinstance(points, PointBatch):
        return points
    return PointBatch.single(points)


def shift_apply(x: SymbolicPoint, k: int) -> SymbolicPoint:
    """The k-th power of the left shift: coordinate n of the result is x_{n+k}."""
    return SymbolicPoint.from_window(x.lo - k, x.word, x.tail)


def dump_points(points: Iterable[SymbolicPoint]) -> str:
    return "".join(f"{point.to_line()}\n" for point in points)


def load_points(text: str) -> list[SymbolicPoint]:
    return [SymbolicPoint.from_line(line) for line in text.splitlines() if line.strip()]
