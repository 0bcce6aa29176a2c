"""Oscillation certificates, level measures and ball-bound checks."""

import logging
import math
from collections.abc import Sequence

from src.birkhoff.averages import birkhoff_average
from src.birkhoff.measures import EmpiricalMeasure
from src.caratheodory.mass import mass_distribution_check
from src.caratheodory.models import MassCertificate
from src.errors import BoundViolatedError, ConfigError, SampledModeError
from src.moran.levels import FractalLevel
from src.moran.models import MoranSchedule, OscillationCertificate, OscillationRow
from src.shiftspace.observables import Observable
from src.shiftspace.points import PointBatch, SymbolicPoint
from src.shiftspace.system import ShiftSystem

logger = logging.getLogger(__name__)

_AVERAGE_SLACK = 1e-9


def _check_chain(levels: Sequence[FractalLevel]) -> None:
    if not levels:
        raise ConfigError("no levels given")
    for index, level in enumerate(levels, start=1):
        if level.k != index:
            raise ConfigError(f"level at position {index} has k = {level.k}")


def average_bound(phi: Observable, schedule: MoranSchedule, k: int) -> float:
    """var(φ, ε_k) + 4δ_k + 2 (t_{k-1} + N_k L_k) ||φ|| / t_k."""
    filler = schedule.previous_length(k) + schedule.N[k - 1] * schedule.L[k - 1]
    return (
        phi.modulus(schedule.scale(k))
        + 4 * schedule.delta[k - 1]
        + 2 * filler * phi.sup_norm / schedule.t[k - 1]
    )


def representative_point(
    sys: ShiftSystem,
    phi: Observable,
    levels: Sequence[FractalLevel],
    schedule: MoranSchedule,
    leaf: int = 0,
) -> tuple[SymbolicPoint, OscillationCertificate]:
    """The level-K center ``leaf`` with its Birkhoff averages at every t_k."""
    _check_chain(levels)
    x = levels[-1].centers.point(leaf)
    rows = []
    for level in levels:
        k = level.k
        average = birkhoff_average(sys, phi, x, level.t)
        target = schedule.alpha(k)
        bound = average_bound(phi, schedule, k)
        rows.append(
            OscillationRow(
                k=k,
                t=level.t,
                average=average,
                target=target,
                bound=bound,
                passed=abs(average - target) <= bound + _AVERAGE_SLACK,
            )
        )
    failed = [row for row in rows if not row.passed]
    if failed:
        row = failed[0]
        raise BoundViolatedError(
            f"level {row.k}: |A_t - alpha| = {abs(row.average - row.target):.6g} "
            f"exceeds the bound {row.bound:.6g}"
        )

    averages = [row.average for row in rows]
    gap = abs(schedule.config.alpha2 - schedule.config.alpha1)
    certified = len(rows) >= 2 and gap > 2 * (rows[-2].bound + rows[-1].bound)
    certificate = OscillationCertificate(
        rows=rows,
        oscillation=max(averages) - min(averages),
        no_limit_certified=certified,
    )
    logger.info(
        "Leaf %d: oscillation %.4f over %d checkpoints (no limit certified: %s)",
        leaf,
        certificate.oscillation,
        len(rows),
        certified,
    )
    return x, certificate


def level_measure(level: FractalLevel) -> EmpiricalMeasure:
    """ν_k: uniform weight on the level's centers."""
    if level.mode != "exact":
        raise SampledModeError(f"level {level.k} is sampled; its measure needs exact counts")
    return EmpiricalMeasure.uniform(level.centers, name=f"nu_{level.k}")


def ball_exponent(schedule: MoranSchedule, s_target: float) -> float:
    """(S - 4γ) |log 5ε0|."""
    config = schedule.config
    return (s_target - 4 * config.gamma) * abs(math.log(5 * config.eps0))


def implied_target(schedule: MoranSchedule, exponent: float) -> float | None:
    """The S whose ball exponent is ``exponent``; None when |log 5ε0| vanishes."""
    config = schedule.config
    scale = abs(math.log(5 * config.eps0))
    if scale == 0:
        return None
    return exponent / scale + 4 * config.gamma


def ball_bound_check(
    sys: ShiftSystem,
    levels: Sequence[FractalLevel],
    schedule: MoranSchedule,
    s_target: float | None = None,
    centers: PointBatch | None = None,
    n_grid: Sequence[int] | None = None,
    workers: int | None = None,
) -> MassCertificate:
    """ν_K(B_n(x, ε0/4)) <= exp(-n (S - 4γ) |log 5ε0|) on balls meeting the level-K centers.

    Without ``s_target`` the check runs at exponent 0 and only the best
    exponent it reports carries information.
    """
    _check_chain(levels)
    deepest = levels[-1]
    measure = level_measure(deepest)
    grid = sorted(schedule.t if n_grid is None else n_grid)
    s0 = 0.0 if s_target is None else ball_exponent(schedule, s_target)
    return mass_distribution_check(
        sys,
        measure,
        deepest.centers,
        schedule.config.eps0 / 4,
        grid[0],
        s0,
        centers=centers,
        n_grid=grid,
        workers=workers,
    )
