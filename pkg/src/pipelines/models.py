"""Experiment configuration: one TOML or JSON file per run."""

import json
import sys
from pathlib import Path
from typing import Any, Literal

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from pydantic import BaseModel, Field, ValidationError

from src.config import settings
from src.counting.models import Strategy
from src.errors import ConfigError
from src.moran.models import Mode, ScheduleConfig


class AlphabetConfig(BaseModel):
    kind: str = "discrete"
    params: dict[str, Any] = Field(default_factory=dict)


class SystemConfig(BaseModel):
    alphabet: AlphabetConfig = Field(default_factory=AlphabetConfig)
    truncation_radius: int | None = None


class ObservableConfig(BaseModel):
    kind: Literal["valuation", "windowed", "constant"] = "valuation"
    weights: list[float] = Field(default_factory=lambda: [1.0])
    value: float = 0.0


class SpaceConfig(BaseModel):
    eps_grid: list[float]
    family: list[AlphabetConfig] = Field(default_factory=list)
    cover_eps: list[float] = Field(default_factory=list)


class CrossCheckConfig(BaseModel):
    """Bowen, capacity and separated-count estimates on all words of one depth."""

    eps: float = Field(gt=0)
    depth: int = Field(ge=1)
    N: int = Field(ge=1)
    n_max: int = Field(ge=1)
    n_grid: list[int]


class KatokConfig(BaseModel):
    eps: float = Field(gt=0)
    deltas: list[float] = Field(default_factory=lambda: [0.05, 0.1, 0.2])
    depth: int = Field(ge=1)
    n_grid: list[int]
    sample: int | None = None


class MdimConfig(BaseModel):
    eps_grid: list[float]
    n_grid: list[int]
    depth_margin: int | Literal["auto"] = 0
    strategy: Strategy = "greedy"
    cap: int | None = None
    sample_size: int | None = None
    word_budget: int | None = Field(default=None, ge=1)
    cross_check: CrossCheckConfig | None = None
    katok: KatokConfig | None = None


class AmbientConfig(BaseModel):
    depth: int = Field(ge=1)
    N: int = Field(ge=1)
    n_max: int = Field(ge=1)


class IrregularConfig(BaseModel):
    schedule: ScheduleConfig
    s_target: float | None = None
    mode: Mode = "exact"
    oracle: str = "full_shift"
    leaves: int = Field(default=1, ge=1)
    ball_grid: list[int] | None = None
    ambient: AmbientConfig | None = None


class ExperimentConfig(BaseModel):
    system: SystemConfig = Field(default_factory=SystemConfig)
    observable: ObservableConfig = Field(default_factory=ObservableConfig)
    space: SpaceConfig | None = None
    mdim: MdimConfig | None = None
    irregular: IrregularConfig | None = None
    seed: int = Field(default_factory=lambda: settings.SEED)
    workers: int | None = None
    output_dir: Path = Path("runs/default")


def load_experiment(path: Path, **overrides) -> ExperimentConfig:
    """Read a TOML or JSON experiment file; non-None overrides replace top-level keys."""
    try:
        text = path.read_text(encoding="utf-8")
        data = json.loads(text) if path.suffix == ".json" else tomllib.loads(text)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except (tomllib.TOMLDecodeError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    data.update({key: value for key, value in overrides.items() if value is not None})
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"invalid experiment config {path}:\n{exc}") from exc
