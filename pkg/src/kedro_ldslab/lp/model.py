import copy
import enum
import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
import scipy.sparse as sps

from ..errors import DuplicateName, InvertedBounds, UnknownVariable

INF = math.inf
OBJECTIVE_ROW = "OBJ"


class Sense(str, enum.Enum):
    """Row sense, valued with the MPS row type letter."""

    LE = "L"
    GE = "G"
    EQ = "E"

    @classmethod
    def parse(cls, value: "Sense | str") -> "Sense":
        if isinstance(value, Sense):
            return value
        aliases = {"<=": cls.LE, ">=": cls.GE, "=": cls.EQ, "==": cls.EQ}
        if value in aliases:
            return aliases[value]
        return cls(value.upper())


class SolveStatus(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    LIMIT = "limit"
    ERROR = "error"


@dataclass
class Variable:
    name: str
    lb: float = 0.0
    ub: float = INF
    obj: float = 0.0


@dataclass
class Row:
    name: str
    sense: Sense
    rhs: float
    # variable handle -> coefficient, in insertion order
    coeffs: dict[int, float] = field(default_factory=dict)


class LpModel:
    """
    Sparse minimisation LP built row by row.

    Variables default to [0, +inf). Handles returned by `add_variable` and `add_row` are stable
    positional indices, so copies made with `copy()` accept the same handles.
    """

    def __init__(self, name: str = "ldslab"):
        self.name = name
        self.variables: list[Variable] = []
        self.rows: list[Row] = []
        self._var_index: dict[str, int] = {}
        self._row_index: dict[str, int] = {}

    @property
    def num_vars(self) -> int:
        return len(self.variables)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def add_variable(
        self, name: str, lb: float = 0.0, ub: float = INF, obj: float = 0.0
    ) -> int:
        if name in self._var_index:
            raise DuplicateName(f"variable '{name}' already exists")
        if lb > ub:
            raise InvertedBounds(f"variable '{name}' has lb={lb} > ub={ub}")
        handle = len(self.variables)
        self.variables.append(Variable(name, float(lb), float(ub), float(obj)))
        self._var_index[name] = handle
        return handle

    def add_row(
        self,
        name: str,
        sense: Sense | str,
        rhs: float,
        coeffs: Iterable[tuple[int, float]] = (),
    ) -> int:
        if name in self._row_index or name == OBJECTIVE_ROW:
            raise DuplicateName(f"row '{name}' already exists")
        merged: dict[int, float] = {}
        for handle, value in coeffs:
            handle = int(handle)
            if not 0 <= handle < len(self.variables):
                raise UnknownVariable(f"row '{name}' references variable {handle}")
            merged[handle] = merged.get(handle, 0.0) + float(value)
        row_handle = len(self.rows)
        self.rows.append(Row(name, Sense.parse(sense), float(rhs), merged))
        self._row_index[name] = row_handle
        return row_handle

    def variable_handle(self, name: str) -> int:
        try:
            return self._var_index[name]
        except KeyError:
            raise UnknownVariable(f"no variable named '{name}'") from None

    def row_handle(self, name: str) -> int:
        return self._row_index[name]

    def set_objective(self, handle: int, value: float) -> None:
        self.variables[handle].obj = float(value)

    def copy(self) -> "LpModel":
        return copy.deepcopy(self)

    # Array views

    def objective_vector(self) -> np.ndarray:
        return np.array([v.obj for v in self.variables], dtype=float)

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        lb = np.array([v.lb for v in self.variables], dtype=float)
        ub = np.array([v.ub for v in self.variables], dtype=float)
        return lb, ub

    def rhs_vector(self) -> np.ndarray:
        return np.array([r.rhs for r in self.rows], dtype=float)

    def senses(self) -> list[Sense]:
        return [r.sense for r in self.rows]

    def constraint_matrix(self) -> sps.csr_matrix:
        indptr = [0]
        indices: list[int] = []
        data: list[float] = []
        for row in self.rows:
            indices.extend(row.coeffs.keys())
            data.extend(row.coeffs.values())
            indptr.append(len(indices))
        return sps.csr_matrix(
            (np.asarray(data, dtype=float), np.asarray(indices, dtype=int), indptr),
            shape=(self.num_rows, self.num_vars),
        )

    def row_activity(self, x: np.ndarray) -> np.ndarray:
        return self.constraint_matrix() @ np.asarray(x, dtype=float)

    def evaluate_objective(self, x: np.ndarray) -> float:
        return float(self.objective_vector() @ np.asarray(x, dtype=float))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LpModel):
            return NotImplemented
        return self.variables == other.variables and self.rows == other.rows

    def __repr__(self) -> str:
        return f"LpModel(name={self.name!r}, vars={self.num_vars}, rows={self.num_rows})"


@dataclass(frozen=True)
class Solution:
    status: SolveStatus
    objective: float | None = None
    values: np.ndarray | None = None
    wall_time_s: float = 0.0
    message: str = ""

    @property
    def has_values(self) -> bool:
        return self.values is not None

    def value(self, handle: int) -> float:
        if self.values is None:
            raise ValueError(f"solution with status '{self.status.value}' has no values")
        return float(self.values[handle])

    def take(self, handles: np.ndarray) -> np.ndarray:
        """Values for an array of handles, keeping its shape."""
        if self.values is None:
            raise ValueError(f"solution with status '{self.status.value}' has no values")
        return self.values[np.asarray(handles, dtype=int)]


@dataclass(frozen=True)
class ModelStats:
    num_rows: int
    num_vars: int
    num_nonzeros: int
    build_time_s: float = 0.0


def model_stats(model: LpModel, build_time_s: float = 0.0) -> ModelStats:
    return ModelStats(
        num_rows=model.num_rows,
        num_vars=model.num_vars,
        num_nonzeros=sum(len(r.coeffs) for r in model.rows),
        build_time_s=build_time_s,
    )
