"""The report command: merge run directories into plot-ready tables."""

import json
import logging
from collections.abc import Sequence
from pathlib import Path

import pandas as pd

from src.errors import ConfigError, MissingArtifactError
from src.observability import get_tracer
from src.pipelines.outputs import write_csv, write_summary

logger = logging.getLogger(__name__)

TABLES = {
    "mdim_rows.csv": "report_htop.csv",
    "plot_birkhoff.csv": "report_birkhoff.csv",
    "box_counts.csv": "report_box_counts.csv",
}
SUMMARIES = ("space.json", "mdim.json", "irregular.json")


def run_report(runs: Sequence[Path], out: Path) -> dict:
    if not runs:
        raise MissingArtifactError("no run directories given")
    names = [run.name for run in runs]
    duplicates = sorted({name for name in names if names.count(name) > 1})
    if duplicates:
        raise ConfigError(f"run directories share a name: {', '.join(duplicates)}")
    tracer = get_tracer()
    with tracer.start_as_current_span("pipeline.report", attributes={"runs": len(runs)}):
        tables: dict[str, list[pd.DataFrame]] = {name: [] for name in TABLES}
        summaries: dict[str, dict] = {}
        for run in runs:
            if not run.is_dir():
                raise MissingArtifactError(f"run directory {run} does not exist")
            found = {}
            for name in TABLES:
                if (run / name).exists():
                    frame = pd.read_csv(run / name)
                    frame.insert(0, "run", run.name)
                    tables[name].append(frame)
                    found[name] = len(frame)
            for name in SUMMARIES:
                if (run / name).exists():
                    found[name] = json.loads((run / name).read_text(encoding="utf-8"))
            if not found:
                raise MissingArtifactError(f"{run} holds no run artifacts")
            summaries[run.name] = found

        written = []
        for name, frames in tables.items():
            if frames:
                merged = pd.concat(frames, ignore_index=True)
                written.append(write_csv(merged, out / TABLES[name]).name)
        summary = {"command": "report", "runs": summaries, "tables": written}
        write_summary(summary, out / "report.json")
    logger.info("Merged %d runs into %s", len(runs), out)
    return summary
