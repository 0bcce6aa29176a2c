import math
from typing import Literal

from pydantic import BaseModel, Field, computed_field, model_validator

Mode = Literal["exact", "sampled"]


class ScheduleConfig(BaseModel):
    """Inputs of a Moran schedule.

    Per-level lists shorter than ``levels`` repeat their last entry. Growth
    bounds are A(k) = bound_a * bound_decay^(k-1) and likewise for B.
    """

    eps0: float = Field(gt=0)
    gamma: float = Field(gt=0, lt=1)
    alpha1: float
    alpha2: float
    levels: int = Field(ge=1)
    nhat_min: list[int] = Field(default_factory=lambda: [1])
    repetition_floor: list[int] = Field(default_factory=lambda: [1])
    bound_a: float = Field(default=1.0, gt=0)
    bound_b: float = Field(default=1.0, gt=0)
    bound_decay: float = Field(default=0.5, gt=0, le=1)
    enforce_tempered: bool = True
    max_nhat: int = Field(default=4096, ge=1)
    max_length: int = Field(default=10**4, ge=1)
    max_centers: int = Field(default=1 << 16, ge=1)
    candidate_cap: int | None = None
    base_sample_size: int | None = None
    seed: int | None = None

    @model_validator(mode="after")
    def _distinct_targets(self):
        if self.alpha1 == self.alpha2:
            raise ValueError(f"target averages must differ, both are {self.alpha1}")
        if min(self.nhat_min) < 1 or min(self.repetition_floor) < 1:
            raise ValueError("segment lengths and repetition floors must be positive")
        return self

    @staticmethod
    def _at(values: list[int], k: int) -> int:
        return values[min(k, len(values)) - 1]

    def nhat_floor(self, k: int) -> int:
        return self._at(self.nhat_min, k)

    def repetition(self, k: int) -> int:
        return self._at(self.repetition_floor, k)

    def bound_a_at(self, k: int) -> float:
        return self.bound_a * self.bound_decay ** (k - 1)

    def bound_b_at(self, k: int) -> float:
        return self.bound_b * self.bound_decay ** (k - 1)


class LevelDiagnostics(BaseModel):
    k: int
    V: int
    tempered_ratio: float
    tempered: bool
    growth_a: float | None = None
    growth_a_bound: float | None = None
    growth_b: float | None = None
    growth_b_bound: float | None = None


class MoranSchedule(BaseModel):
    """Per-level parameters, all lists indexed by k - 1."""

    config: ScheduleConfig
    delta: list[float]
    nhat: list[int]
    N: list[int]
    L: list[int]
    t: list[int]
    M: list[int | None]
    diagnostics: list[LevelDiagnostics]

    @property
    def levels(self) -> int:
        return self.config.levels

    @staticmethod
    def rho(k: int) -> int:
        return (k + 1) % 2 + 1

    def alpha(self, k: int) -> float:
        return self.config.alpha1 if self.rho(k) == 1 else self.config.alpha2

    def scale(self, k: int) -> float:
        """ε0 / 2^(5 + k), the shadowing radius of level k."""
        return self.config.eps0 / 2 ** (5 + k)

    def previous_length(self, k: int) -> int:
        return self.t[k - 2] if k > 1 else 0

    def record_base(self, k: int, size: int) -> None:
        self.M[k - 1] = size

    def expected_centers(self, k: int) -> int | None:
        if any(m is None for m in self.M[:k]):
            return None
        return math.prod(m**n for m, n in zip(self.M[:k], self.N[:k], strict=True))


class CheckResult(BaseModel):
    passed: bool
    checked: int
    worst_margin: float | None = None
    sampled: bool = False


class LevelReport(BaseModel):
    k: int
    centers: int
    mode: Mode
    separation: CheckResult
    disjointness: CheckResult
    nesting: CheckResult
    siblings: CheckResult

    @computed_field
    @property
    def passed(self) -> bool:
        return all(
            check.passed
            for check in (self.separation, self.disjointness, self.nesting, self.siblings)
        )


class OscillationRow(BaseModel):
    k: int
    t: int
    average: float
    target: float
    bound: float
    passed: bool


class OscillationCertificate(BaseModel):
    rows: list[OscillationRow]
    oscillation: float
    no_limit_certified: bool

    @computed_field
    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)
