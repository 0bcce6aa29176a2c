from src.moran.artifacts import read_levels, write_levels
from src.moran.certificates import (
    average_bound,
    ball_bound_check,
    ball_exponent,
    implied_target,
    level_measure,
    representative_point,
)
from src.moran.levels import (
    FractalLevel,
    build_base_separated,
    build_level,
    pair_distances,
    verify_level,
)
from src.moran.models import (
    LevelReport,
    MoranSchedule,
    OscillationCertificate,
    ScheduleConfig,
)
from src.moran.schedule import build_schedule, has_deviation, schedule_violations

__all__ = [
    "FractalLevel",
    "LevelReport",
    "MoranSchedule",
    "OscillationCertificate",
    "ScheduleConfig",
    "average_bound",
    "ball_bound_check",
    "ball_exponent",
    "build_base_separated",
    "build_level",
    "build_schedule",
    "has_deviation",
    "implied_target",
    "level_measure",
    "pair_distances",
    "read_levels",
    "representative_point",
    "schedule_violations",
    "verify_level",
    "write_levels",
]
