"""Mass distribution certificates: lower bounds on Bowen entropy from a measure."""

import logging
from collections.abc import Sequence

import numpy as np

from src.birkhoff.measures import EmpiricalMeasure
from src.caratheodory.models import BallCheck, MassCertificate
from src.errors import ConfigError
from src.shiftspace.points import PointBatch
from src.shiftspace.system import ShiftSystem, bowen_reach

logger = logging.getLogger(__name__)

_BOUND_TOL = 1e-12


def _row_keys(batch: PointBatch, lo: int, hi: int) -> list[bytes]:
    return [row.tobytes() for row in batch.aligned(lo, hi)]


def check_support(measure: EmpiricalMeasure, target: PointBatch) -> None:
    """Every atom must be a target point."""
    atoms = measure.atoms
    if atoms.tail != target.tail:
        raise ConfigError("measure atoms and target points use different tails")
    lo, hi = min(atoms.lo, target.lo), max(atoms.hi, target.hi)
    known = set(_row_keys(target, lo, hi))
    outside = sum(key not in known for key in _row_keys(atoms, lo, hi))
    if outside:
        raise ConfigError(f"{outside} measure atoms lie outside the target set")


def mass_distribution_check(
    sys: ShiftSystem,
    measure: EmpiricalMeasure,
    target: PointBatch,
    eps: float,
    N: int,
    s0: float,
    centers: PointBatch | None = None,
    n_grid: Sequence[int] | None = None,
    workers: int | None = None,
) -> MassCertificate:
    """Check μ(B_n(x, ε)) <= exp(-n s0) on the balls (centers x n_grid) that meet the target.

    Ball masses and target intersections are over-counted using d_n - error < ε.
    Only the listed centers and lengths are checked. With the target itself as
    the centers, any ball B_n(y, ε/2) meeting the target at z lies inside the
    checked B_n(z, ε), so a pass bounds the mass of every such half-radius ball
    at the checked lengths; ``certified_eps`` records that scale.

    The comparison runs in log space since exp(-n s0) underflows for long
    balls. ``best_exponent`` is the largest s0 every checked ball would pass.
    """
    check_support(measure, target)
    covers_target = centers is None
    centers = target if centers is None else centers
    grid = [N] if n_grid is None else sorted(int(n) for n in n_grid)
    if grid[0] < N:
        raise ConfigError(f"ball lengths {grid} must be at least N = {N}")
    n_max = grid[-1]
    slack = np.log1p(_BOUND_TOL)

    atom_reach = bowen_reach(
        sys, centers, measure.atoms, eps, n_max, certified=False, workers=workers
    )
    target_reach = bowen_reach(
        sys, centers, target, eps, n_max, certified=False, workers=workers
    )
    balls: list[BallCheck] = []
    for index in range(len(centers)):
        line = centers.point(index).to_line()
        for n in grid:
            if not (target_reach[index] >= n).any():
                continue
            mass = float(measure.weights[atom_reach[index] >= n].sum())
            log_bound = -n * s0
            exponent = None if mass <= 0 else float(-np.log(mass) / n)
            balls.append(
                BallCheck(
                    center=line,
                    n=n,
                    mass=mass,
                    bound=float(np.exp(log_bound)),
                    log_bound=log_bound,
                    exponent=exponent,
                    passed=mass <= 0 or bool(np.log(mass) <= log_bound + slack),
                )
            )

    exponents = [ball.exponent for ball in balls if ball.exponent is not None]
    certificate = MassCertificate(
        measure=measure.name,
        eps=eps,
        certified_eps=eps / 2 if covers_target else None,
        N=N,
        s0=s0,
        balls=balls,
        passed=all(ball.passed for ball in balls),
        best_exponent=min(exponents) if exponents else None,
    )
    if not certificate.passed:
        # largest log(mass) - log_bound
        worst = max(certificate.violations, key=lambda ball: np.log(ball.mass) + ball.n * s0)
        logger.warning(
            "Mass bound fails at s0=%.4f: n=%d ball holds %.4g > exp(%.4g)",
            s0,
            worst.n,
            worst.mass,
            worst.log_bound,
        )
    return certificate
