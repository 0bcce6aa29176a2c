from pydantic import BaseModel, Field


class DeviationSpec(BaseModel):
    """Points whose length-n Birkhoff average lies strictly within err of alpha."""

    alpha: float
    err: float = Field(gt=0)
    n: int = Field(ge=1)


class KatokRow(BaseModel):
    n: int
    count: int
    log_count: float
    greedy_exact_ratio: float | None = None


class KatokEstimate(BaseModel):
    eps: float
    delta: float
    rows: list[KatokRow]
    lower: float
    upper: float
    atoms: int
    greedy_exact_ratio: float | None = None
