"""The space command: verify an alphabet, box-count it and build finite covers."""

import logging
from pathlib import Path

from src.errors import ConfigError
from src.metricspace.alphabet import verify_metric
from src.metricspace.covers import box_dimension_estimate, build_cover
from src.observability import get_tracer, record_numbers
from src.pipelines.builders import alphabet_from
from src.pipelines.models import ExperimentConfig
from src.pipelines.outputs import rows_frame, write_csv, write_summary

logger = logging.getLogger(__name__)


def run_space(config: ExperimentConfig) -> dict:
    if config.space is None:
        raise ConfigError("config has no [space] block")
    block = config.space
    out = Path(config.output_dir)
    tracer = get_tracer()
    with tracer.start_as_current_span(
        "pipeline.space", attributes={"eps.count": len(block.eps_grid)}
    ) as span:
        alphabet = alphabet_from(config.system.alphabet)
        metric = verify_metric(alphabet, seed=config.seed)
        summary = {
            "command": "space",
            "alphabet": {
                "kind": alphabet.kind,
                "size": alphabet.size,
                "diam": alphabet.diam,
                "resolution": alphabet.resolution,
            },
            "metric": metric,
        }
        if not metric.passed:
            write_summary(summary, out / "space.json")
            first = metric.violations[0]
            raise ConfigError(
                f"alphabet violates the metric axioms ({len(metric.violations)} violations); "
                f"first: {first.kind} on symbols {first.symbols} by {first.excess:.3g}"
            )

        family = [alphabet] + [alphabet_from(member) for member in block.family]
        box = box_dimension_estimate(family, block.eps_grid)
        write_csv(rows_frame(box.rows, bound_side="upper"), out / "box_counts.csv")
        covers = [build_cover(alphabet, eps) for eps in block.cover_eps]
        summary["box_dimension"] = box.model_dump(exclude={"rows"})
        summary["covers"] = [
            cover.model_dump(exclude={"elements"}) | {"elements": len(cover.elements)}
            for cover in covers
        ]
        record_numbers(span, "box", summary["box_dimension"])
        write_summary(summary, out / "space.json")
    logger.info("Box-counting slope %.4f on %d points", box.fitted_slope, alphabet.size)
    return summary
