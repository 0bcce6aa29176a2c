from src.shiftspace.observables import (
    Observable,
    constant_observable,
    coordinate_valuation,
    windowed_observable,
)
from src.shiftspace.points import (
    PointBatch,
    SymbolicPoint,
    dump_points,
    load_points,
    shift_apply,
)
from src.shiftspace.system import (
    ShiftSystem,
    bowen_distances,
    bowen_metric,
    bowen_profile,
    bowen_reach,
    pairwise_bowen,
    product_metric,
    product_system,
)

__all__ = [
    "Observable",
    "PointBatch",
    "ShiftSystem",
    "SymbolicPoint",
    "bowen_distances",
    "bowen_metric",
    "bowen_profile",
    "bowen_reach",
    "constant_observable",
    "coordinate_valuation",
    "dump_points",
    "load_points",
    "pairwise_bowen",
    "product_metric",
    "product_system",
    "shift_apply",
    "windowed_observable",
]
