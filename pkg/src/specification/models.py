"""Gap functions, segment plans and shadowing reports."""

from collections.abc import Sequence
from typing import Literal

from pydantic import BaseModel, Field, model_validator

from src.errors import ConfigError, InadmissiblePlanError
from src.shiftspace.points import SymbolicPoint


class GapFunction(BaseModel):
    """Nondecreasing n -> L(n) serving one scale ε.

    Tabulated gaps are step functions: L(n) is the value at the largest
    breakpoint <= n, and the first value below the first breakpoint.
    """

    form: Literal["constant", "tabulated"]
    eps: float = Field(gt=0)
    constant: int | None = None
    breakpoints: list[int] = Field(default_factory=list)
    values: list[int] = Field(default_factory=list)
    tempered_from: int | None = 1

    @model_validator(mode="after")
    def _check(self):
        if self.form == "constant":
            if self.constant is None or self.constant < 1:
                raise ValueError(f"constant gap must be a positive integer, got {self.constant}")
            return self
        if not self.breakpoints or len(self.breakpoints) != len(self.values):
            raise ValueError("tabulated gap needs matching, nonempty breakpoints and values")
        if any(b <= a for a, b in zip(self.breakpoints, self.breakpoints[1:], strict=False)):
            raise ValueError(f"breakpoints must increase: {self.breakpoints}")
        if min(self.values) < 1 or any(
            b < a for a, b in zip(self.values, self.values[1:], strict=False)
        ):
            raise ValueError(f"gap values must be positive and nondecreasing: {self.values}")
        if self.tempered_from is not None and not self.is_tempered(self.tempered_from):
            raise ValueError(
                f"gap is not tempered from n = {self.tempered_from}: L(2n) > 2 L(n) somewhere"
            )
        return self

    @classmethod
    def constant_gap(cls, eps: float, value: int) -> "GapFunction":
        return cls(form="constant", eps=eps, constant=value)

    @classmethod
    def tabulated(
        cls, eps: float, table: dict[int, int], tempered_from: int | None = 1
    ) -> "GapFunction":
        keys = sorted(table)
        return cls(
            form="tabulated",
            eps=eps,
            breakpoints=keys,
            values=[table[k] for k in keys],
            tempered_from=tempered_from,
        )

    def __call__(self, n: int) -> int:
        if self.form == "constant":
            return int(self.constant)
        value = self.values[0]
        for breakpoint, candidate in zip(self.breakpoints, self.values, strict=True):
            if breakpoint > n:
                break
            value = candidate
        return value

    def is_tempered(self, start: int = 1, horizon: int | None = None) -> bool:
        """L(2n)/(2n) <= L(n)/n for every n in [start, horizon]."""
        if self.form == "constant":
            return True
        horizon = 2 * self.breakpoints[-1] if horizon is None else horizon
        return all(self(2 * n) <= 2 * self(n) for n in range(max(1, start), horizon + 1))


class Segment(BaseModel):
    source: SymbolicPoint
    start: int
    end: int


class SegmentPlan(BaseModel):
    """Blocks [start, end] in which the glued point must follow σ^{i - start} source."""

    segments: list[Segment]
    eps: float = Field(gt=0)

    @model_validator(mode="after")
    def _ordered(self):
        if not self.segments:
            raise ValueError("a plan needs at least one segment")
        if self.segments[0].start < 0:
            raise ValueError(f"first block starts at {self.segments[0].start} < 0")
        for index, segment in enumerate(self.segments):
            if segment.end < segment.start:
                raise ValueError(f"segment {index} ends before it starts")
            if index and segment.start <= self.segments[index - 1].end:
                raise ValueError(f"segment {index} overlaps its predecessor")
        return self

    @classmethod
    def layout(
        cls,
        sources: Sequence[SymbolicPoint],
        lengths: Sequence[int],
        spacing: int,
        eps: float,
        start: int = 0,
    ) -> "SegmentPlan":
        """Consecutive blocks of the given lengths with ``spacing`` free coordinates between."""
        if len(sources) != len(lengths):
            raise ConfigError(f"{len(sources)} sources for {len(lengths)} block lengths")
        segments = []
        cursor = start
        for source, length in zip(sources, lengths, strict=True):
            segments.append(Segment(source=source, start=cursor, end=cursor + length - 1))
            cursor += length + spacing
        return cls(segments=segments, eps=eps)

    @property
    def end(self) -> int:
        return self.segments[-1].end

    def violations(self, gap: GapFunction) -> list[str]:
        found = []
        for index in range(len(self.segments) - 1):
            left, right = self.segments[index], self.segments[index + 1]
            needed = gap(right.end - right.start)
            if right.start - left.end < needed:
                found.append(
                    f"a_{index + 2} - b_{index + 1} = {right.start - left.end} < L = {needed}"
                )
        return found

    def check_admissible(self, gap: GapFunction) -> None:
        found = self.violations(gap)
        if found:
            raise InadmissiblePlanError("plan violates gap constraints: " + "; ".join(found))


class SegmentShadow(BaseModel):
    index: int
    start: int
    end: int
    worst_distance: float
    error: float
    passed: bool


class ShadowingReport(BaseModel):
    passed: bool
    eps: float
    segments: list[SegmentShadow]

    @property
    def worst_distance(self) -> float:
        return max(segment.worst_distance for segment in self.segments)
