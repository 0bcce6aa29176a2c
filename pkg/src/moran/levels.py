"""Level sets of the Moran construction and their verification."""

import itertools
import logging
from dataclasses import dataclass

import numpy as np

from src.birkhoff.averages import sample_deviation_candidates, separated_in_deviation
from src.birkhoff.models import DeviationSpec
from src.config import settings
from src.counting.candidates import enumerate_candidates
from src.counting.models import Strategy
from src.counting.separated import SeparatedSet
from src.errors import CapExceededError, ConfigError
from src.moran.models import CheckResult, LevelReport, Mode, MoranSchedule
from src.parallel import ordered_map
from src.shiftspace.observables import Observable
from src.shiftspace.points import PointBatch
from src.shiftspace.system import ShiftSystem, bowen_profile
from src.specification import GluingOracle, SegmentPlan, get_oracle

logger = logging.getLogger(__name__)

_PAIR_CHUNK = 256
_MAX_PAIRS = 20000


@dataclass(frozen=True, eq=False)
class FractalLevel:
    """Centers H_k with their descent: parents index level k-1, tuples index S_k."""

    k: int
    centers: PointBatch
    t: int
    radius: float
    parents: np.ndarray
    tuples: np.ndarray
    mode: Mode = "exact"

    def __len__(self) -> int:
        return len(self.centers)


def build_base_separated(
    sys: ShiftSystem,
    phi: Observable,
    schedule: MoranSchedule,
    k: int,
    strategy: Strategy = "greedy",
) -> SeparatedSet:
    """S_k: a maximal (n̂_k, 9ε0/8)-separated subset of the level-k deviation set.

    M_k is recorded in the schedule.
    """
    config = schedule.config
    spec = DeviationSpec(
        alpha=schedule.alpha(k), err=4 * schedule.delta[k - 1], n=schedule.nhat[k - 1]
    )
    cap = settings.CANDIDATE_CAP if config.candidate_cap is None else config.candidate_cap
    if sys.alphabet.size**spec.n <= cap:
        candidates = enumerate_candidates(sys, spec.n, spec.n, cap=cap)
    else:
        size = config.base_sample_size or settings.SAMPLE_SIZE
        candidates = sample_deviation_candidates(sys, phi, spec, size, seed=config.seed)
        logger.warning(
            "Level %d: %d^%d words exceed the cap; S_k drawn from %d tilted samples",
            k,
            sys.alphabet.size,
            spec.n,
            size,
        )
    separated = separated_in_deviation(
        sys, phi, spec, 9 * config.eps0 / 8, candidates, strategy
    )
    schedule.record_base(k, len(separated))
    logger.info("Level %d base set: M_%d = %d", k, k, len(separated))
    return separated


def _choices(
    parents: int, base: int, repetitions: int, cap: int, mode: Mode, seed: int | None
) -> tuple[np.ndarray, np.ndarray, bool]:
    total = parents * base**repetitions
    if total <= cap:
        tuples = np.array(
            list(itertools.product(range(base), repeat=repetitions)), dtype=np.int64
        )
        parent_index = np.repeat(np.arange(parents), len(tuples))
        return parent_index, np.tile(tuples, (parents, 1)), False
    if mode == "exact":
        raise CapExceededError(
            f"{total} centers exceed the cap {cap}; use sampled mode or raise max_centers"
        )
    rng = np.random.default_rng(settings.SEED if seed is None else seed)
    draws = np.column_stack(
        [rng.integers(0, parents, cap), rng.integers(0, base, (cap, repetitions))]
    )
    draws = np.unique(draws, axis=0)
    logger.warning("Sampling %d of %d centers", len(draws), total)
    return draws[:, 0], draws[:, 1:], True


def build_level(
    sys: ShiftSystem,
    previous: FractalLevel | None,
    base: SeparatedSet,
    schedule: MoranSchedule,
    k: int,
    mode: Mode = "exact",
    oracle: GluingOracle | None = None,
    workers: int | None = None,
) -> FractalLevel:
    """Glue the parent over [0, t_{k-1}) and an N_k-tuple of S_k after it, per center."""
    if len(base) == 0:
        raise ConfigError(f"level {k} needs a nonempty base set")
    if (previous is None) != (k == 1):
        raise ConfigError(f"level {k} {'needs' if k > 1 else 'takes no'} parent level")
    oracle = oracle or get_oracle("full_shift")
    config = schedule.config
    nhat, repetitions, gap_length = schedule.nhat[k - 1], schedule.N[k - 1], schedule.L[k - 1]
    scale = schedule.scale(k)
    gap = oracle.gap(sys, scale)
    sources = base.points
    parent_count = 1 if previous is None else len(previous)
    parents, tuples, sampled = _choices(
        parent_count, len(base), repetitions, config.max_centers, mode, config.seed
    )
    inherited = previous is not None and previous.mode == "sampled"
    mode = "sampled" if sampled or inherited else "exact"

    def center(index: int):
        blocks = [sources[i] for i in tuples[index]]
        lengths = [nhat] * repetitions
        if previous is not None:
            blocks = [previous.centers.point(int(parents[index]))] + blocks
            lengths = [previous.t] + lengths
        plan = SegmentPlan.layout(blocks, lengths, gap_length, scale)
        return oracle.glue(sys, plan, gap)

    points = ordered_map(center, range(len(tuples)), workers)
    level = FractalLevel(
        k=k,
        centers=PointBatch.from_points(points),
        t=schedule.t[k - 1],
        radius=scale,
        parents=parents if previous is not None else np.full(len(tuples), -1, dtype=np.int64),
        tuples=tuples,
        mode=mode,
    )
    logger.info("Level %d built: %d centers of length %d (%s)", k, len(level), level.t, mode)
    return level


def _pairs(count: int, seed: int | None) -> tuple[np.ndarray, np.ndarray, bool]:
    total = count * (count - 1) // 2
    if total <= _MAX_PAIRS:
        left, right = np.triu_indices(count, k=1)
        return left, right, False
    rng = np.random.default_rng(settings.SEED if seed is None else seed)
    left = rng.integers(0, count, _MAX_PAIRS)
    right = rng.integers(0, count, _MAX_PAIRS)
    keep = left != right
    return left[keep], right[keep], True


def pair_distances(
    sys: ShiftSystem,
    first: PointBatch,
    second: PointBatch,
    n: int,
    workers: int | None = None,
) -> tuple[np.ndarray, float]:
    """d_n between row i of ``first`` and row i of ``second``."""
    starts = range(0, len(first), _PAIR_CHUNK)

    def chunk(start: int) -> tuple[np.ndarray, float]:
        rows = np.arange(start, min(start + _PAIR_CHUNK, len(first)))
        profile, error = bowen_profile(sys, first.take(rows), second.take(rows), n)
        return profile.max(axis=1), error

    parts = ordered_map(chunk, starts, workers)
    if not parts:
        return np.zeros(0), sys.slack
    return np.concatenate([d for d, _ in parts]), max(e for _, e in parts)


def _check(
    values: np.ndarray, margins: np.ndarray, sampled: bool, strict: bool = True
) -> CheckResult:
    passed = (margins > 0) if strict else (margins >= 0)
    return CheckResult(
        passed=bool(passed.all()),
        checked=len(values),
        worst_margin=float(margins.min()) if len(margins) else None,
        sampled=sampled,
    )


def verify_level(
    sys: ShiftSystem,
    level: FractalLevel,
    schedule: MoranSchedule,
    previous: FractalLevel | None = None,
    workers: int | None = None,
) -> LevelReport:
    """Separation, disjointness, nesting into parents and the sibling dichotomy."""
    eps0 = schedule.config.eps0
    separation = 17 * eps0 / 16
    left, right, sampled = _pairs(len(level), schedule.config.seed)
    distances, error = pair_distances(
        sys, level.centers.take(left), level.centers.take(right), level.t, workers
    )
    separation_check = _check(distances, distances - 2 * error - separation, sampled)
    disjoint_check = _check(distances, distances - 2 * error - 2 * level.radius, sampled)

    if previous is None:
        vacuous = CheckResult(passed=True, checked=0)
        nesting_check, sibling_check = vacuous, vacuous
    else:
        nest, nest_error = pair_distances(
            sys, level.centers, previous.centers.take(level.parents), previous.t, workers
        )
        nesting_check = _check(nest, level.radius - nest - nest_error, False, strict=False)

        same = level.parents[left] == level.parents[right]
        early, early_error = pair_distances(
            sys,
            level.centers.take(left[same]),
            level.centers.take(right[same]),
            previous.t,
            workers,
        )
        margins = np.minimum(
            previous.radius - early - early_error,
            distances[same] - 2 * error - separation,
        )
        sibling_check = _check(early, margins, sampled)

    report = LevelReport(
        k=level.k,
        centers=len(level),
        mode=level.mode,
        separation=separation_check,
        disjointness=disjoint_check,
        nesting=nesting_check,
        siblings=sibling_check,
    )
    if not report.passed:
        logger.warning("Level %d fails verification: %s", level.k, report.model_dump())
    return report
