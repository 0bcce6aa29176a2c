"""The mdim command: separated-set growth across scales, with optional cross-checks."""

import logging
from pathlib import Path

import pandas as pd

from src.birkhoff.measures import bernoulli_measure, katok_entropy_estimate
from src.caratheodory.entropy import bowen_entropy_estimate, capacity_entropy
from src.counting.candidates import DepthRule, enumerate_candidates
from src.counting.growth import htop_eps_estimate, mdim_estimate
from src.counting.models import MdimEstimate
from src.errors import ConfigError
from src.observability import get_tracer, record_numbers
from src.pipelines.builders import system_from
from src.pipelines.models import CrossCheckConfig, ExperimentConfig, KatokConfig, MdimConfig
from src.pipelines.outputs import rows_frame, write_csv, write_summary
from src.shiftspace.system import ShiftSystem

logger = logging.getLogger(__name__)

SUBADDITIVITY_TOLERANCE = 0.05
SANDWICH_TOLERANCE = 0.1


def _estimate(
    sys: ShiftSystem, block: MdimConfig, seed: int, workers: int | None
) -> MdimEstimate:
    return mdim_estimate(
        sys,
        block.eps_grid,
        block.n_grid,
        depth_rule=DepthRule(block.depth_margin),
        strategy=block.strategy,
        cap=block.cap,
        sample_size=block.sample_size,
        seed=seed,
        workers=workers,
        word_budget=block.word_budget,
    )


def cross_check(
    sys: ShiftSystem, block: CrossCheckConfig, seed: int, workers: int | None
) -> dict:
    """Bowen estimate <= capacity proxy <= separated-count estimate, on one word set."""
    targets = enumerate_candidates(sys, block.depth, block.depth, seed=seed).batch
    bowen = bowen_entropy_estimate(sys, targets, block.eps, block.N, block.n_max, workers=workers)
    capacity = capacity_entropy(sys, targets, block.eps, block.n_grid, workers=workers)
    separated = htop_eps_estimate(sys, block.eps, block.n_grid, seed=seed, workers=workers)
    return {
        "bowen": bowen,
        "capacity": capacity,
        "separated": separated.model_dump(exclude={"rows"}),
        "bowen_below_capacity": bowen.s_lo <= capacity.lower,
        "capacity_below_separated": capacity.lower
        <= separated.upper * (1 + SANDWICH_TOLERANCE),
    }


def katok_rows(
    sys: ShiftSystem, block: KatokConfig, seed: int, workers: int | None
) -> list[dict]:
    measure = bernoulli_measure(sys, block.depth, block.sample, seed)
    rows = []
    for delta in block.deltas:
        estimate = katok_entropy_estimate(
            sys, measure, block.eps, delta, block.n_grid, workers=workers
        )
        rows.append(estimate.model_dump(exclude={"rows"}) | {"measure": measure.name})
    return rows


def run_mdim(config: ExperimentConfig) -> dict:
    if config.mdim is None:
        raise ConfigError("config has no [mdim] block")
    block = config.mdim
    out = Path(config.output_dir)
    tracer = get_tracer()
    with tracer.start_as_current_span(
        "pipeline.mdim",
        attributes={"eps.count": len(block.eps_grid), "n.max": max(block.n_grid)},
    ) as span:
        sys = system_from(config.system)
        estimate = _estimate(sys, block, config.seed, config.workers)
        counts = pd.concat(
            [
                rows_frame(
                    ledger.rows,
                    symbols=ledger.symbols,
                    resolution=ledger.resolution,
                    bound_side="lower",
                )
                for ledger in estimate.ledgers
            ],
            ignore_index=True,
        )
        rows = rows_frame(estimate.rows)
        write_csv(counts, out / "mdim_counts.csv")
        write_csv(rows, out / "mdim_rows.csv")
        write_csv(rows[["abs_log_eps", "htop", "mode"]], out / "plot_htop.csv")
        summary = {
            "command": "mdim",
            "upper": estimate.upper,
            "lower": estimate.lower,
            "fitted_slope": estimate.fitted_slope,
            "resolution": estimate.resolution,
            "ledgers": [ledger.model_dump(exclude={"rows"}) for ledger in estimate.ledgers],
        }
        record_numbers(span, "mdim", summary)

        if sys.alphabet.factors:
            factors = [
                _estimate(ShiftSystem(factor, sys.truncation_radius), block, config.seed, config.workers)
                for factor in sys.alphabet.factors
            ]
            total = sum(factor.upper for factor in factors)
            summary["subadditivity"] = {
                "product_upper": estimate.upper,
                "factor_uppers": [factor.upper for factor in factors],
                "factor_sum": total,
                "passed": estimate.upper <= total + SUBADDITIVITY_TOLERANCE,
            }
        if block.cross_check is not None:
            summary["cross_check"] = cross_check(sys, block.cross_check, config.seed, config.workers)
        if block.katok is not None:
            katok = katok_rows(sys, block.katok, config.seed, config.workers)
            uppers = [row["upper"] for row in katok]
            summary["katok"] = katok
            summary["katok_spread"] = max(uppers) - min(uppers)
        write_summary(summary, out / "mdim.json")
    logger.info("mdim in [%.4f, %.4f]", estimate.lower, estimate.upper)
    return summary
