from pydantic import BaseModel


class MetricViolation(BaseModel):
    kind: str  # "diagonal", "negative", "asymmetry" or "triangle"
    symbols: list[int]
    excess: float


class MetricReport(BaseModel):
    passed: bool
    size: int
    exhaustive: bool
    triples_checked: int
    violations: list[MetricViolation]


class BoxCountRow(BaseModel):
    member: int
    resolution: float
    eps: float
    abs_log_eps: float
    greedy_count: int
    exact_count: int | None
    count: int


class BoxDimensionReport(BaseModel):
    fitted_slope: float
    residual: float
    upper_slope: float
    lower_slope: float
    resolution: float
    rows: list[BoxCountRow]


class CoverElement(BaseModel):
    center: int
    radius: float
    size: int


class CoverSpec(BaseModel):
    eps: float
    elements: list[CoverElement]
    diam_bound: float
    lebesgue_bound: float
    resolution: float


class AlphabetDocument(BaseModel):
    """Serialized form of an alphabet. Formulaic kinds are rebuilt from params."""

    kind: str
    params: dict[str, float | int | str] = {}
    labels: list[str]
    tail_symbol: int = 0
    valuation: list[float] | None = None
    matrix: list[list[float]] | None = None
    factors: list["AlphabetDocument"] = []
