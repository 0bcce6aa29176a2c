from typing import Literal

from pydantic import BaseModel

BoundSide = Literal["upper", "lower"]


class CriticalExponent(BaseModel):
    """Bisection bracket where the best-found cover weight crosses 1."""

    eps: float
    N: int
    n_max: int
    s_lo: float
    s_hi: float
    value: float
    weight_lo: float
    weight_hi: float
    targets: int
    bound_side: BoundSide = "upper"


class CapacityRow(BaseModel):
    N: int
    count: int
    exponent: float


class CapacityEstimate(BaseModel):
    eps: float
    rows: list[CapacityRow]
    upper: float
    lower: float
    bound_side: BoundSide = "upper"


class AppendixCheck(BaseModel):
    passed: bool
    n: int
    eps: float
    radius: float
    exponent: float
    cover_weight: float
    bound: float
    covered: bool


class BallCheck(BaseModel):
    """One Bowen ball. ``bound`` may underflow to 0; the test runs on ``log_bound``."""

    center: str
    n: int
    mass: float
    bound: float
    log_bound: float
    exponent: float | None
    passed: bool


class MassCertificate(BaseModel):
    measure: str
    eps: float
    certified_eps: float | None
    N: int
    s0: float
    balls: list[BallCheck]
    passed: bool
    best_exponent: float | None
    bound_side: BoundSide = "lower"

    @property
    def violations(self) -> list[BallCheck]:
        return [ball for ball in self.balls if not ball.passed]
