"""Deterministic CSV and JSON writers for run directories."""

import json
from pathlib import Path
from typing import Any

import pandas as pd
from pydantic import BaseModel

from src.config import settings


def write_csv(frame: pd.DataFrame, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, lineterminator="\n", encoding="utf-8")
    return path


def _plain(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def write_summary(summary: dict[str, Any], path: Path) -> Path:
    """JSON with a schema_version field, sorted keys and a trailing newline."""
    path.parent.mkdir(parents=True, exist_ok=True)
    document = {"schema_version": settings.SCHEMA_VERSION, **summary}
    text = json.dumps(document, indent=2, sort_keys=True, default=_plain)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text + "\n")
    return path


def rows_frame(rows: list[BaseModel], **columns: Any) -> pd.DataFrame:
    """One row per model, with constant provenance columns appended."""
    frame = pd.DataFrame([row.model_dump() for row in rows])
    for name, value in columns.items():
        frame[name] = value
    return frame
