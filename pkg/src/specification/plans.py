import numpy as np

from src.config import settings
from src.shiftspace.points import SymbolicPoint
from src.shiftspace.system import ShiftSystem
from src.specification.models import GapFunction, Segment, SegmentPlan


def random_admissible_plan(
    sys: ShiftSystem,
    gap: GapFunction,
    segments: int,
    max_length: int = 8,
    max_extra_gap: int = 3,
    seed: int | np.random.Generator | None = None,
) -> SegmentPlan:
    """Random sources and block lengths, each gap at least the required L."""
    rng = np.random.default_rng(settings.SEED if seed is None else seed)
    size = sys.alphabet.size
    tail = sys.alphabet.tail_symbol
    cursor = int(rng.integers(0, max_extra_gap + 1))
    planned = []
    for _ in range(segments):
        length = int(rng.integers(1, max_length + 1))
        if planned:
            cursor = planned[-1].end + gap(length - 1) + int(rng.integers(0, max_extra_gap + 1))
        lo = int(rng.integers(-max_length, 1))
        width = int(rng.integers(1, 3 * max_length + 1))
        source = SymbolicPoint.from_window(lo, rng.integers(0, size, width).tolist(), tail)
        planned.append(Segment(source=source, start=cursor, end=cursor + length - 1))
    return SegmentPlan(segments=planned, eps=gap.eps)
