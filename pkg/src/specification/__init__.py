from src.errors import ConfigError
from src.specification.base import GluingOracle
from src.specification.full_shift import (
    FullShiftGluing,
    copy_windows,
    full_shift_gap,
    glue,
    verify_shadowing,
)
from src.specification.models import (
    GapFunction,
    Segment,
    SegmentPlan,
    ShadowingReport,
)
from src.specification.plans import random_admissible_plan

ORACLE_REGISTRY: dict[str, type[GluingOracle]] = {
    "full_shift": FullShiftGluing,
}


def get_oracle(name: str) -> GluingOracle:
    """Return the gluing oracle registered under ``name``."""
    if name in ORACLE_REGISTRY:
        return ORACLE_REGISTRY[name]()
    supported = ", ".join(ORACLE_REGISTRY)
    raise ConfigError(f"Unsupported gluing oracle: {name}. Supported: {supported}")


__all__ = [
    "ORACLE_REGISTRY",
    "FullShiftGluing",
    "GapFunction",
    "GluingOracle",
    "Segment",
    "SegmentPlan",
    "ShadowingReport",
    "copy_windows",
    "full_shift_gap",
    "get_oracle",
    "glue",
    "random_admissible_plan",
    "verify_shadowing",
]
