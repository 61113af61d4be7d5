"""CSV outputs: the comparison report, per-storage trajectories and violation tables."""

import logging
from pathlib import Path
from typing import Sequence

import numpy as np
import pandas as pd

from ..errors import IoError, ParseError
from .compare import REPORT_COLUMNS, ComparisonReport
from .soc import SocTrajectory
from .violations import ViolationReport

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.9g"


def _write_frame(frame: pd.DataFrame, path: str | Path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}") from e
    return path


def write_report_csv(report: ComparisonReport, path: str | Path) -> Path:
    path = _write_frame(report.to_frame(), path)
    logger.info("Wrote comparison report with %d rows to %s", len(report), path)
    return path


def read_report_csv(path: str | Path) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, dtype={"formulation": str, "status": str})
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise ParseError(path, str(e)) from None
    if list(frame.columns) != REPORT_COLUMNS:
        raise ParseError(path, f"unexpected header {list(frame.columns)}")
    return frame


def trajectory_frame(traj: SocTrajectory) -> pd.DataFrame:
    """`step,soc` rows for steps 1..H plus the wrap value at step H+1."""
    return pd.DataFrame({"step": np.arange(1, len(traj.values) + 1), "soc": traj.values})


def write_trajectory_csv(traj: SocTrajectory, path: str | Path) -> Path:
    return _write_frame(trajectory_frame(traj), path)


def violations_frame(reports: Sequence[ViolationReport]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "storage": r.storage,
                "capacity": r.capacity,
                "count_over": r.count_over,
                "count_under": r.count_under,
                "max_over": r.max_over,
                "max_under": r.max_under,
                "over_steps": " ".join(str(h) for h in r.over_steps),
                "under_steps": " ".join(str(h) for h in r.under_steps),
            }
            for r in reports
        ],
        columns=[
            "storage",
            "capacity",
            "count_over",
            "count_under",
            "max_over",
            "max_under",
            "over_steps",
            "under_steps",
        ],
    )


def write_violations_csv(reports: Sequence[ViolationReport], path: str | Path) -> Path:
    return _write_frame(violations_frame(reports), path)
