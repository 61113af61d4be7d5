import logging
from copy import deepcopy
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd
from kedro.io import DatasetError
from kedro_datasets.pandas.csv_dataset import CSVDataset, TablePreview

from ..errors import InputNotFoundError, LengthError, MissingColumnError, ParseError, RangeError
from .system_config import SystemConfig

logger = logging.getLogger(__name__)

DEMAND_PREFIX = "demand."
STEP_COLUMN = "step"


def demand_column(zone: str) -> str:
    return f"{DEMAND_PREFIX}{zone}"


@dataclass(frozen=True, eq=False)
class TimeSeriesTable:
    """
    Input time series, one row per time step.

    `frame` is indexed by the 1-based `step`. Columns named `demand.<zone>` hold demand in kW;
    every other column is an availability factor in [0, 1].
    """

    frame: pd.DataFrame

    @property
    def H(self) -> int:
        return len(self.frame)

    @property
    def columns(self) -> list[str]:
        return [str(c) for c in self.frame.columns]

    def has_column(self, name: str) -> bool:
        return name in self.frame.columns

    def column(self, name: str) -> np.ndarray:
        if name not in self.frame.columns:
            raise MissingColumnError(f"time series has no column '{name}'")
        return self.frame[name].to_numpy(dtype=float)

    def demand(self, zone: str) -> np.ndarray:
        return self.column(demand_column(zone))

    def values(self) -> np.ndarray:
        """(H, num_columns) array in column order."""
        return self.frame.to_numpy(dtype=float)

    @classmethod
    def from_columns(cls, columns: dict[str, "np.ndarray | list[float]"]) -> "TimeSeriesTable":
        frame = pd.DataFrame({k: np.asarray(v, dtype=float) for k, v in columns.items()})
        frame.index = pd.RangeIndex(1, len(frame) + 1, name=STEP_COLUMN)
        return cls(frame)


class TimeSeriesCSVDataset(CSVDataset):
    def __init__(self, *args, **kwargs):
        """
        A drop-in replacement for `kedro_datasets.pandas.CSVDataset` that reads and writes the
        `step` column as the index, so the catalog entry does not have to repeat:
            load_args:
              index_col: step
            save_args:
              index: true
        """
        load_args = deepcopy(kwargs.get("load_args", {})) or {}
        save_args = deepcopy(kwargs.get("save_args", {})) or {}
        load_args.setdefault("index_col", STEP_COLUMN)
        save_args.setdefault("index", True)
        kwargs["load_args"] = load_args
        kwargs["save_args"] = save_args
        super().__init__(*args, **kwargs)

    def preview(self, nrows: int = 10) -> TablePreview:
        """
        Preview for kedro-viz: the first `nrows` steps, with `step` shown as a column.
        """
        dataset_copy = self._copy()
        dataset_copy._load_args["nrows"] = nrows  # type: ignore[attr-defined]
        data = dataset_copy.load().reset_index()
        return data.to_dict(orient="split")


def to_timeseries_table(frame: pd.DataFrame, config: SystemConfig, source="<frame>") -> TimeSeriesTable:
    """Check a raw frame (indexed by step) against the config and wrap it."""
    H = config.horizon.H
    if len(frame) != H:
        raise LengthError(f"{source}: {len(frame)} rows but horizon.H = {H}")
    steps = np.asarray(frame.index)
    if not np.array_equal(steps, np.arange(1, H + 1)):
        raise ParseError(source, "column 'step' must run 1, 2, ..., H")

    frame = frame.copy()
    frame.index = pd.RangeIndex(1, H + 1, name=STEP_COLUMN)
    for name in frame.columns:
        try:
            frame[name] = pd.to_numeric(frame[name]).astype(float)
        except (TypeError, ValueError):
            raise ParseError(source, f"column '{name}' is not numeric") from None
        values = frame[name].to_numpy()
        if np.isnan(values).any():
            raise RangeError(f"{source}: column '{name}' has missing values")
        if str(name).startswith(DEMAND_PREFIX):
            if (values < 0).any():
                raise RangeError(f"{source}: demand column '{name}' has negative values")
        elif (values < 0).any() or (values > 1).any():
            bad = values[(values < 0) | (values > 1)][0]
            raise RangeError(f"{source}: availability column '{name}' has value {bad} outside [0, 1]")

    for gen in config.generators:
        if gen.kind == "vre" and gen.availability_series not in frame.columns:
            raise MissingColumnError(
                f"{source}: generator '{gen.name}' needs column '{gen.availability_series}'"
            )
    return TimeSeriesTable(frame)


def load_timeseries(path: str | Path, config: SystemConfig) -> TimeSeriesTable:
    path = Path(path)
    if not path.is_file():
        raise InputNotFoundError(path)
    try:
        frame = TimeSeriesCSVDataset(filepath=str(path)).load()
    except DatasetError as e:
        raise ParseError(path, str(e.__cause__ or e)) from None
    table = to_timeseries_table(frame, config, source=path)
    logger.info("Loaded %s: %d steps, columns %s", path, table.H, ", ".join(table.columns))
    return table
