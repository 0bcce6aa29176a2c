"""Specification for full shifts: gluing is coordinate copying."""

import logging
import math

import numpy as np

from src.errors import ConfigError
from src.shiftspace.points import SymbolicPoint, shift_apply
from src.shiftspace.system import ShiftSystem, bowen_profile
from src.specification.base import GluingOracle
from src.specification.models import (
    GapFunction,
    SegmentPlan,
    SegmentShadow,
    ShadowingReport,
)

logger = logging.getLogger(__name__)


def full_shift_gap(sys: ShiftSystem, eps: float) -> GapFunction:
    """Constant gap 2 * ceil(log2(8 (1 + diam) / eps)), at least 2."""
    if eps <= 0:
        raise ConfigError(f"gap scale must be positive, got {eps}")
    half = max(1, math.ceil(math.log2(8 * (1 + sys.alphabet.diam) / eps)))
    return GapFunction.constant_gap(eps, 2 * half)


def copy_windows(plan: SegmentPlan, gap: GapFunction) -> list[tuple[int, int]]:
    """Extended window of each segment.

    Free coordinates between blocks split at the midpoint, the extra one going
    to the earlier block; the outer blocks extend by ceil(L / 2).
    """
    segments = plan.segments
    first, last = segments[0], segments[-1]
    edges = [first.start - math.ceil(gap(first.end - first.start) / 2)]
    for left, right in zip(segments, segments[1:], strict=False):
        free = right.start - left.end - 1
        edges.append(left.end + math.ceil(free / 2))
        edges.append(edges[-1] + 1)
    edges.append(last.end + math.ceil(gap(last.end - last.start) / 2))
    return [(edges[2 * j], edges[2 * j + 1]) for j in range(len(segments))]


def glue(sys: ShiftSystem, plan: SegmentPlan, gap: GapFunction) -> SymbolicPoint:
    """Copy each source onto its extended window; tail symbol elsewhere."""
    plan.check_admissible(gap)
    windows = copy_windows(plan, gap)
    lo, hi = windows[0][0], windows[-1][1]
    word = np.full(hi - lo + 1, sys.alphabet.tail_symbol, dtype=np.int64)
    for segment, (left, right) in zip(plan.segments, windows, strict=True):
        sys.check_point(segment.source)
        word[left - lo : right - lo + 1] = segment.source.segment(
            left - segment.start, right - segment.start
        )
    return SymbolicPoint.from_window(lo, word.tolist(), sys.alphabet.tail_symbol)


def verify_shadowing(
    sys: ShiftSystem, y: SymbolicPoint, plan: SegmentPlan, eps: float | None = None
) -> ShadowingReport:
    """d(σ^i y, σ^{i - a_j} x_j) for every block coordinate, against eps with margin."""
    eps = plan.eps if eps is None else eps
    rows = []
    for index, segment in enumerate(plan.segments):
        profile, error = bowen_profile(
            sys,
            shift_apply(y, segment.start),
            segment.source,
            segment.end - segment.start + 1,
        )
        worst = float(profile.max())
        rows.append(
            SegmentShadow(
                index=index,
                start=segment.start,
                end=segment.end,
                worst_distance=worst,
                error=error,
                passed=worst + error < eps,
            )
        )
    report = ShadowingReport(passed=all(row.passed for row in rows), eps=eps, segments=rows)
    if not report.passed:
        failed = next(row for row in rows if not row.passed)
        logger.warning(
            "Segment %d [%d, %d] is not shadowed: distance %.4g at eps %.4g",
            failed.index,
            failed.start,
            failed.end,
            failed.worst_distance,
            eps,
        )
    return report


class FullShiftGluing(GluingOracle):
    def gap(self, sys: ShiftSystem, eps: float) -> GapFunction:
        return full_shift_gap(sys, eps)

    def glue(self, sys: ShiftSystem, plan: SegmentPlan, gap: GapFunction) -> SymbolicPoint:
        return glue(sys, plan, gap)
