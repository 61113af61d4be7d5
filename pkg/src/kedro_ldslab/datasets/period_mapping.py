"""Period mapping: which representative stands in for each input period.

Indices are 0-based in memory. The two CSV files use 1-based indices:

    period_mapping.csv    period,representative
    representatives.csv   representative,designated_period,weight
"""

import logging
from dataclasses import dataclass
from pathlib import Path, PurePosixPath

import numpy as np
import pandas as pd
from kedro.io import AbstractDataset, DatasetError

from ..errors import InputNotFoundError, InvariantError, IoError, ParseError

logger = logging.getLogger(__name__)

ASSIGNMENT_FILE = "period_mapping.csv"
REPRESENTATIVES_FILE = "representatives.csv"


@dataclass(frozen=True)
class PeriodMapping:
    N: int
    T: int
    rep_of: tuple[int, ...]
    designated: tuple[int, ...]
    weight: tuple[int, ...]

    def __post_init__(self):
        for name in ("rep_of", "designated", "weight"):
            object.__setattr__(self, name, tuple(int(v) for v in getattr(self, name)))
        W = len(self.designated)
        if self.N < 1 or self.T < 1 or W < 1:
            raise InvariantError(f"mapping needs N, T, W >= 1 (got N={self.N}, T={self.T}, W={W})")
        if len(self.rep_of) != self.N or len(self.weight) != W:
            raise InvariantError("rep_of must have length N and weight length W")
        if any(not 0 <= w < W for w in self.rep_of):
            raise InvariantError("rep_of holds a representative outside 0..W-1")
        if any(not 0 <= n < self.N for n in self.designated):
            raise InvariantError("designated holds a period outside 0..N-1")
        for w, n in enumerate(self.designated):
            if self.rep_of[n] != w:
                raise InvariantError(f"designated period {n} of representative {w} maps to {self.rep_of[n]}")
        counts = np.bincount(self.rep_of, minlength=W)
        if tuple(int(c) for c in counts) != self.weight:
            raise InvariantError(f"weights {self.weight} do not match the assignment counts {tuple(counts)}")

    @property
    def W(self) -> int:
        return len(self.designated)

    @property
    def H(self) -> int:
        return self.N * self.T

    def step_of(self, w: int, t: int) -> int:
        """0-based row of the time series holding step t of representative w."""
        return self.designated[w] * self.T + t

    def to_frames(self) -> tuple[pd.DataFrame, pd.DataFrame]:
        assignment = pd.DataFrame(
            {
                "period": np.arange(1, self.N + 1),
                "representative": np.asarray(self.rep_of) + 1,
            }
        )
        representatives = pd.DataFrame(
            {
                "representative": np.arange(1, self.W + 1),
                "designated_period": np.asarray(self.designated) + 1,
                "weight": np.asarray(self.weight),
            }
        )
        return assignment, representatives

    @classmethod
    def from_frames(cls, assignment: pd.DataFrame, representatives: pd.DataFrame, T: int) -> "PeriodMapping":
        assignment = assignment.sort_values("period")
        representatives = representatives.sort_values("representative")
        N, W = len(assignment), len(representatives)
        if not np.array_equal(assignment["period"].to_numpy(), np.arange(1, N + 1)):
            raise ValueError("periods must run 1..N")
        if not np.array_equal(representatives["representative"].to_numpy(), np.arange(1, W + 1)):
            raise ValueError("representatives must run 1..W")
        return cls(
            N=N,
            T=T,
            rep_of=assignment["representative"].to_numpy(dtype=int) - 1,
            designated=representatives["designated_period"].to_numpy(dtype=int) - 1,
            weight=representatives["weight"].to_numpy(dtype=int),
        )


def write_period_mapping(mapping: PeriodMapping, directory: str | Path) -> tuple[Path, Path]:
    directory = Path(directory)
    assignment, representatives = mapping.to_frames()
    paths = directory / ASSIGNMENT_FILE, directory / REPRESENTATIVES_FILE
    try:
        directory.mkdir(parents=True, exist_ok=True)
        assignment.to_csv(paths[0], index=False, lineterminator="\n")
        representatives.to_csv(paths[1], index=False, lineterminator="\n")
    except OSError as e:
        raise IoError(f"cannot write period mapping to {directory}: {e}") from e
    logger.info("Wrote period mapping (N=%d, W=%d) to %s", mapping.N, mapping.W, directory)
    return paths


def read_period_mapping(directory: str | Path, T: int) -> PeriodMapping:
    directory = Path(directory)
    frames = []
    for name in (ASSIGNMENT_FILE, REPRESENTATIVES_FILE):
        path = directory / name
        if not path.is_file():
            raise InputNotFoundError(path)
        try:
            frames.append(pd.read_csv(path))
        except (pd.errors.ParserError, pd.errors.EmptyDataError, ValueError) as e:
            raise ParseError(path, str(e)) from None
    try:
        return PeriodMapping.from_frames(*frames, T=T)
    except (KeyError, ValueError, InvariantError) as e:
        raise ParseError(directory, f"inconsistent period mapping: {e}") from None


class PeriodMappingDataset(AbstractDataset):
    """
    Kedro dataset writing a `PeriodMapping` as the two CSV files under `path`.

    Loading needs `steps_per_period`, which the files do not carry.
    """

    def __init__(self, path: str, steps_per_period: int | None = None, metadata: dict | None = None):
        self._path = PurePosixPath(path)
        self._steps_per_period = steps_per_period
        self.metadata = metadata

    def load(self) -> PeriodMapping:
        if self._steps_per_period is None:
            raise DatasetError(f"{self._path}: set steps_per_period to load a period mapping")
        return read_period_mapping(self._path, self._steps_per_period)

    def save(self, data: PeriodMapping) -> None:
        write_period_mapping(data, self._path)

    def _describe(self) -> dict:
        return {"path": str(self._path), "steps_per_period": self._steps_per_period}
