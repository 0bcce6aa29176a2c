"""Directory layout for schedules, levels, descent maps and level reports."""

import json
import logging
from collections.abc import Sequence
from pathlib import Path

import numpy as np
import pandas as pd

from src.errors import MissingArtifactError
from src.moran.levels import FractalLevel
from src.moran.models import LevelReport, MoranSchedule
from src.shiftspace.points import PointBatch, dump_points, load_points

logger = logging.getLogger(__name__)

SCHEDULE_FILE = "schedule.json"


def _level_dir(root: Path, k: int) -> Path:
    return root / f"level_{k}"


def write_levels(
    root: Path,
    schedule: MoranSchedule,
    levels: Sequence[FractalLevel],
    reports: Sequence[LevelReport] = (),
) -> None:
    root.mkdir(parents=True, exist_ok=True)
    (root / SCHEDULE_FILE).write_text(schedule.model_dump_json(indent=2) + "\n")
    by_level = {report.k: report for report in reports}
    for level in levels:
        directory = _level_dir(root, level.k)
        directory.mkdir(exist_ok=True)
        with open(directory / "centers.txt", "w", newline="\n") as f:
            f.write(dump_points(level.centers.points()))
        descent = pd.DataFrame(
            level.tuples, columns=[f"tuple_{i + 1}" for i in range(level.tuples.shape[1])]
        )
        descent.insert(0, "parent", level.parents)
        descent.insert(0, "center", np.arange(len(level)))
        descent.to_csv(directory / "descent.csv", index=False, lineterminator="\n")
        meta = {"k": level.k, "t": level.t, "radius": level.radius, "mode": level.mode}
        (directory / "meta.json").write_text(json.dumps(meta, indent=2) + "\n")
        if level.k in by_level:
            (directory / "report.json").write_text(
                by_level[level.k].model_dump_json(indent=2) + "\n"
            )
    logger.info("Wrote %d levels to %s", len(levels), root)


def read_levels(root: Path) -> tuple[MoranSchedule, list[FractalLevel]]:
    schedule_path = root / SCHEDULE_FILE
    if not schedule_path.exists():
        raise MissingArtifactError(f"no {SCHEDULE_FILE} under {root}")
    schedule = MoranSchedule.model_validate_json(schedule_path.read_text())
    levels = []
    k = 1
    while _level_dir(root, k).exists():
        directory = _level_dir(root, k)
        try:
            meta = json.loads((directory / "meta.json").read_text())
            points = load_points((directory / "centers.txt").read_text())
            descent = pd.read_csv(directory / "descent.csv")
        except FileNotFoundError as exc:
            raise MissingArtifactError(f"incomplete level directory {directory}") from exc
        tuple_columns = [c for c in descent.columns if c.startswith("tuple_")]
        levels.append(
            FractalLevel(
                k=meta["k"],
                centers=PointBatch.from_points(points),
                t=meta["t"],
                radius=meta["radius"],
                parents=descent["parent"].to_numpy(dtype=np.int64),
                tuples=descent[tuple_columns].to_numpy(dtype=np.int64),
                mode=meta["mode"],
            )
        )
        k += 1
    return schedule, levels
