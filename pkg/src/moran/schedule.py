"""Moran schedules: tolerances, segment lengths, repetitions, gaps and cumulative lengths."""

import logging
import math

from src.birkhoff.averages import deviation_members, sample_deviation_candidates
from src.birkhoff.models import DeviationSpec
from src.config import settings
from src.counting.candidates import enumerate_candidates
from src.errors import BudgetExceededError, EmptyDeviationError, InvalidScheduleError
from src.moran.models import LevelDiagnostics, MoranSchedule, ScheduleConfig
from src.shiftspace.observables import Observable
from src.shiftspace.system import ShiftSystem
from src.specification import GluingOracle, get_oracle

logger = logging.getLogger(__name__)

_FEASIBILITY_SAMPLES = 64


def has_deviation(
    sys: ShiftSystem,
    phi: Observable,
    spec: DeviationSpec,
    cap: int | None = None,
    seed: int | None = None,
) -> bool:
    """Whether some length-n word has an average within err of alpha.

    Exhaustive while |K|^n fits under the cap, tilted sampling beyond it.
    """
    cap = settings.CANDIDATE_CAP if cap is None else cap
    if sys.alphabet.size**spec.n <= cap:
        family = enumerate_candidates(sys, spec.n, spec.n, cap=cap)
        return len(deviation_members(sys, phi, family, spec)) > 0
    try:
        found = sample_deviation_candidates(sys, phi, spec, _FEASIBILITY_SAMPLES, seed=seed)
    except EmptyDeviationError:
        return False
    return len(found) > 0


def tempered_threshold(gap: int, gamma: float, k: int) -> int:
    """V_k: the least n with log(L) / n < γ / 2^(k+1)."""
    return math.floor(math.log(gap) * 2 ** (k + 1) / gamma) + 1


def _level_gap(sys: ShiftSystem, oracle: GluingOracle, eps: float, n: int) -> int:
    return oracle.gap(sys, eps)(n)


def build_schedule(
    sys: ShiftSystem,
    phi: Observable,
    config: ScheduleConfig,
    oracle: GluingOracle | None = None,
) -> MoranSchedule:
    """Choose δ_k, n̂_k, L_k, N_k and t_k, then verify every schedule invariant."""
    oracle = oracle or get_oracle("full_shift")
    levels = config.levels
    if config.eps0 >= sys.alphabet.diam:
        raise InvalidScheduleError(
            f"eps0 = {config.eps0} must be below the alphabet diameter {sys.alphabet.diam}"
        )
    for alpha in (config.alpha1, config.alpha2):
        low, high = phi.value_range
        if not low <= alpha <= high:
            raise EmptyDeviationError(f"target {alpha} lies outside [{low}, {high}]")

    delta = [config.gamma / 2**k for k in range(1, levels + 1)]
    nhat: list[int] = []
    gaps: list[int] = []
    thresholds: list[int] = []
    for k in range(1, levels + 1):
        scale = config.eps0 / 2 ** (5 + k)
        n = config.nhat_floor(k)
        threshold = tempered_threshold(_level_gap(sys, oracle, scale, n), config.gamma, k)
        if config.enforce_tempered:
            n = max(n, threshold + 1)
        alpha = config.alpha1 if MoranSchedule.rho(k) == 1 else config.alpha2
        while not has_deviation(
            sys,
            phi,
            DeviationSpec(alpha=alpha, err=4 * delta[k - 1], n=n),
            config.candidate_cap,
            config.seed,
        ):
            n += 1
            if n > config.max_nhat:
                raise BudgetExceededError(
                    f"level {k}: no deviation word of length <= {config.max_nhat} "
                    f"averages within {4 * delta[k - 1]} of {alpha}"
                )
        if n > config.max_nhat:
            raise BudgetExceededError(f"level {k}: n̂ = {n} exceeds max_nhat {config.max_nhat}")
        nhat.append(n)
        gaps.append(_level_gap(sys, oracle, scale, n))
        thresholds.append(tempered_threshold(gaps[-1], config.gamma, k))

    repetitions: list[int] = []
    for k in range(1, levels + 1):
        need = config.repetition(k)
        if k < levels:
            need = max(need, math.ceil(2 * (nhat[k] + gaps[k]) / config.bound_a_at(k)))
        if k > 1:
            built = sum(repetitions[i] * (nhat[i] + gaps[i]) for i in range(k - 1))
            need = max(need, math.ceil(2 * built / config.bound_b_at(k - 1)))
        repetitions.append(need)

    lengths = [repetitions[0] * nhat[0] + (repetitions[0] - 1) * gaps[0]]
    for k in range(2, levels + 1):
        lengths.append(lengths[-1] + repetitions[k - 1] * (nhat[k - 1] + gaps[k - 1]))
    if lengths[-1] > config.max_length:
        raise BudgetExceededError(
            f"t_{levels} = {lengths[-1]} exceeds the length budget {config.max_length}"
        )

    diagnostics = []
    for k in range(1, levels + 1):
        ratio = math.log(gaps[k - 1]) / nhat[k - 1]
        row = LevelDiagnostics(
            k=k,
            V=thresholds[k - 1],
            tempered_ratio=ratio,
            tempered=ratio < config.gamma / 2 ** (k + 1),
        )
        if k < levels:
            row.growth_a = (nhat[k] + gaps[k]) / repetitions[k - 1]
            row.growth_a_bound = config.bound_a_at(k)
            built = sum(repetitions[i] * (nhat[i] + gaps[i]) for i in range(k))
            row.growth_b = built / repetitions[k]
            row.growth_b_bound = config.bound_b_at(k)
        diagnostics.append(row)

    schedule = MoranSchedule(
        config=config,
        delta=delta,
        nhat=nhat,
        N=repetitions,
        L=gaps,
        t=lengths,
        M=[None] * levels,
        diagnostics=diagnostics,
    )
    problems = schedule_violations(schedule)
    if problems:
        raise InvalidScheduleError("schedule invariants fail: " + "; ".join(problems))
    for row in diagnostics:
        if not row.tempered:
            logger.warning(
                "Level %d is not tempered: log(L)/n̂ = %.4g (V_k = %d)",
                row.k,
                row.tempered_ratio,
                row.V,
            )
    logger.info("Schedule built: n̂=%s N=%s L=%s t=%s", nhat, repetitions, gaps, lengths)
    return schedule


def schedule_violations(schedule: MoranSchedule) -> list[str]:
    """Every failed schedule invariant, tempered levels only when enforced."""
    config = schedule.config
    problems = []
    if schedule.delta[0] >= config.gamma:
        problems.append(f"δ_1 = {schedule.delta[0]} is not below γ = {config.gamma}")
    if any(b >= a for a, b in zip(schedule.delta, schedule.delta[1:], strict=False)):
        problems.append("δ_k is not strictly decreasing")
    first = schedule.N[0] * schedule.nhat[0] + (schedule.N[0] - 1) * schedule.L[0]
    if schedule.t[0] != first:
        problems.append(f"t_1 = {schedule.t[0]} differs from {first}")
    for k in range(2, schedule.levels + 1):
        expected = schedule.t[k - 2] + schedule.N[k - 1] * (
            schedule.nhat[k - 1] + schedule.L[k - 1]
        )
        if schedule.t[k - 1] != expected:
            problems.append(f"t_{k} = {schedule.t[k - 1]} differs from {expected}")
    for row in schedule.diagnostics:
        if row.growth_a is not None and row.growth_a > row.growth_a_bound:
            problems.append(f"growth A fails at k={row.k}: {row.growth_a} > {row.growth_a_bound}")
        if row.growth_b is not None and row.growth_b > row.growth_b_bound:
            problems.append(f"growth B fails at k={row.k}: {row.growth_b} > {row.growth_b_bound}")
        if config.enforce_tempered and not row.tempered:
            problems.append(f"level {row.k} is not tempered")
    return problems
