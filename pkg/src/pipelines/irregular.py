"""The irregular command: Moran levels, oscillation certificates and ball bounds."""

import logging
from pathlib import Path

import pandas as pd

from src.caratheodory.entropy import bowen_entropy_estimate
from src.caratheodory.models import MassCertificate
from src.counting.candidates import enumerate_candidates
from src.errors import CertificateError, ConfigError
from src.moran import (
    FractalLevel,
    LevelReport,
    MoranSchedule,
    ball_bound_check,
    ball_exponent,
    build_base_separated,
    build_level,
    build_schedule,
    implied_target,
    representative_point,
    verify_level,
    write_levels,
)
from src.moran.models import Mode
from src.observability import get_tracer, record_numbers
from src.pipelines.builders import observable_from, system_from
from src.pipelines.models import ExperimentConfig
from src.pipelines.outputs import write_csv, write_summary
from src.specification import get_oracle

logger = logging.getLogger(__name__)


def lower_bound_summary(
    schedule: MoranSchedule, s_target: float | None, mass: MassCertificate | None
) -> dict:
    """The Bowen-entropy lower bound the ball check supports, and why it may not hold.

    The value is the best exponent over the checked balls. It is certified only
    for a tempered schedule, a passing check and a positive exponent.
    """
    config = schedule.config
    reasons: list[str] = []
    if not config.enforce_tempered:
        reasons.append("relaxed schedule: temperedness was not enforced")
    untempered = [row.k for row in schedule.diagnostics if not row.tempered]
    if untempered:
        reasons.append(f"levels {untempered} are not tempered")
    target = None if s_target is None else ball_exponent(schedule, s_target)
    if mass is None:
        reasons.append("deepest level is sampled, no ball bound was checked")
        value = 0.0
    else:
        value = mass.best_exponent or 0.0
        if not mass.passed:
            reasons.append(f"ball bound fails at S = {s_target}")
    if value <= 0:
        reasons.append("vacuous bound: no positive exponent is certified")
    if reasons:
        logger.warning("Bowen lower bound not certified: %s", "; ".join(reasons))
    return {
        "eps": config.eps0 / 4,
        "certified_eps": None if mass is None else mass.certified_eps,
        "value": value,
        "target_exponent": target,
        "implied_target": implied_target(schedule, value),
        "certified": not reasons,
        "reasons": reasons,
        "bound_side": "lower",
    }


def run_irregular(config: ExperimentConfig, mode: Mode | None = None) -> dict:
    if config.irregular is None:
        raise ConfigError("config has no [irregular] block")
    block = config.irregular
    mode = mode or block.mode
    out = Path(config.output_dir)
    sys = system_from(config.system)
    phi = observable_from(sys, config.observable)

    if phi.is_constant:
        summary = {
            "command": "irregular",
            "irregular_empty": True,
            "reason": f"observable {phi.name} is constant, so every Birkhoff average converges",
        }
        write_summary(summary, out / "irregular.json")
        logger.info("Constant observable: the irregular set is empty")
        return summary

    schedule_config = block.schedule
    if schedule_config.seed is None:
        schedule_config = schedule_config.model_copy(update={"seed": config.seed})
    oracle = get_oracle(block.oracle)
    tracer = get_tracer()
    levels: list[FractalLevel] = []
    reports: list[LevelReport] = []
    with tracer.start_as_current_span(
        "pipeline.irregular", attributes={"levels": schedule_config.levels}
    ) as span:
        schedule = build_schedule(sys, phi, schedule_config, oracle)
        try:
            for k in range(1, schedule.levels + 1):
                previous = levels[-1] if levels else None
                with tracer.start_as_current_span("pipeline.irregular.level", attributes={"k": k}):
                    base = build_base_separated(sys, phi, schedule, k)
                    level = build_level(
                        sys, previous, base, schedule, k, mode, oracle, config.workers
                    )
                    reports.append(verify_level(sys, level, schedule, previous, config.workers))
                    levels.append(level)
        finally:
            write_levels(out / "levels", schedule, levels, reports)

        leaves = min(block.leaves, len(levels[-1]))
        certificates = [
            representative_point(sys, phi, levels, schedule, leaf)[1] for leaf in range(leaves)
        ]
        birkhoff = pd.DataFrame(
            [
                row.model_dump() | {"leaf": leaf}
                for leaf, certificate in enumerate(certificates)
                for row in certificate.rows
            ]
        )
        write_csv(birkhoff[["leaf", "k", "t", "average", "target", "bound", "passed"]], out / "plot_birkhoff.csv")

        mass = None
        if levels[-1].mode == "exact":
            mass = ball_bound_check(
                sys, levels, schedule, block.s_target, n_grid=block.ball_grid, workers=config.workers
            )
            write_csv(
                pd.DataFrame([ball.model_dump() for ball in mass.balls]), out / "ball_bounds.csv"
            )
        else:
            logger.warning("Deepest level is sampled; skipping the ball-bound certificate")

        ambient = None
        if block.ambient is not None:
            targets = enumerate_candidates(sys, block.ambient.depth, block.ambient.depth).batch
            ambient = bowen_entropy_estimate(
                sys,
                targets,
                schedule.config.eps0 / 4,
                block.ambient.N,
                block.ambient.n_max,
                workers=config.workers,
            )

        bound = lower_bound_summary(schedule, block.s_target, mass)
        summary = {
            "command": "irregular",
            "irregular_empty": False,
            "mode": levels[-1].mode,
            "schedule": schedule,
            "levels": reports,
            "oscillation": certificates,
            "ball_bound": None
            if mass is None
            else mass.model_dump(exclude={"balls"})
            | {
                "balls_checked": len(mass.balls),
                "violations": [ball.model_dump() for ball in mass.violations],
            },
            "bowen_lower_bound": bound,
            "ambient_bowen": ambient,
            "ambient_ratio": None
            if ambient is None or ambient.value <= 0
            else bound["value"] / ambient.value,
        }
        record_numbers(span, "irregular", summary | {"centers": len(levels[-1])})
        write_summary(summary, out / "irregular.json")

    failed = [report.k for report in reports if not report.passed]
    if failed:
        raise CertificateError(f"level checks fail at k = {failed}")
    if mass is not None and not mass.passed:
        raise CertificateError(
            f"ball bound fails on {len(mass.violations)} balls at S = {block.s_target}"
        )
    return summary
