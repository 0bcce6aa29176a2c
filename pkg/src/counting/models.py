from typing import Literal

from pydantic import BaseModel

Mode = Literal["exact", "sampled"]
Strategy = Literal["exact", "greedy"]


class SpanningReport(BaseModel):
    passed: bool
    n: int
    eps: float
    worst_distance: float
    candidates_checked: int


class GrowthRow(BaseModel):
    eps: float
    n: int
    depth: int
    count: int
    log_count: float
    mode: Mode
    strategy: Strategy


class GrowthLedger(BaseModel):
    eps: float
    rows: list[GrowthRow]
    slope: float
    residual: float
    upper: float
    lower: float
    symbols: int
    resolution: float
    sampled: bool


class MdimRow(BaseModel):
    eps: float
    abs_log_eps: float
    htop: float
    symbols: int
    n_max: int
    resolution: float
    mode: Mode


class MdimEstimate(BaseModel):
    rows: list[MdimRow]
    upper: float
    lower: float
    fitted_slope: float
    resolution: float
    ledgers: list[GrowthLedger]
