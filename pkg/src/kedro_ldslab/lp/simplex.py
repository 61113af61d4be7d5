"""Dense two-phase primal simplex for desk-scale models.

The model is brought to standard form `min c'y, Ay = b, y >= 0, b >= 0` by shifting finite lower
bounds, mirroring variables that only have an upper bound, splitting free variables and adding one
row per finite upper bound. Pivoting follows Bland's rule throughout, so the method terminates on
degenerate problems at the price of speed. The leaving row is taken among exact minimum ratios
only, and the tableau is rebuilt from the original rows every `refactor_every` pivots.
"""

import logging
import math
import time
from dataclasses import dataclass

import numpy as np

from ..errors import NumericalError, SizeLimit
from .model import LpModel, Solution, SolveStatus

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReferenceOptions:
    max_rows: int = 5000
    max_iterations: int = 200_000
    # optimality, ratio-test and pivot eligibility tolerance
    tolerance: float = 1e-9
    # phase-one objective above this (scaled by the rhs magnitude) means infeasible
    infeasibility_tolerance: float = 1e-7
    min_pivot: float = 1e-11
    # ratios within this of the minimum count as ties
    tie_tolerance: float = 1e-12
    refactor_every: int = 50


@dataclass
class _StandardForm:
    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
    # x = offset + D @ y for the structural part of y
    offset: np.ndarray
    D: np.ndarray
    num_structural: int
    # column index of the +1 slack usable as an initial basic variable, per row (-1 if none)
    unit_slack: np.ndarray


def _standard_form(model: LpModel) -> _StandardForm:
    n = model.num_vars
    lb, ub = model.bounds()
    c = model.objective_vector()

    offset = np.zeros(n)
    columns: list[tuple[int, float]] = []  # (original variable, sign)
    bound_rows: list[tuple[int, float]] = []  # (structural column, width)
    for j in range(n):
        if lb[j] > -math.inf:
            offset[j] = lb[j]
            columns.append((j, 1.0))
            if ub[j] < math.inf:
                bound_rows.append((len(columns) - 1, ub[j] - lb[j]))
        elif ub[j] < math.inf:
            offset[j] = ub[j]
            columns.append((j, -1.0))
        else:
            columns.append((j, 1.0))
            columns.append((j, -1.0))

    num_structural = len(columns)
    D = np.zeros((n, num_structural))
    for k, (j, sign) in enumerate(columns):
        D[j, k] = sign

    A_model = model.constraint_matrix().toarray() if model.num_rows else np.zeros((0, n))
    A_rows = A_model @ D
    b_rows = model.rhs_vector() - A_model @ offset
    senses = [s.value for s in model.senses()]

    m = model.num_rows + len(bound_rows)
    structural = np.zeros((m, num_structural))
    b = np.zeros(m)
    slack_sign = np.zeros(m)
    structural[: model.num_rows] = A_rows
    b[: model.num_rows] = b_rows
    for i, sense in enumerate(senses):
        if sense != "E":
            slack_sign[i] = 1.0 if sense == "L" else -1.0
    for r, (k, width) in enumerate(bound_rows):
        i = model.num_rows + r
        structural[i, k] = 1.0
        b[i] = width
        slack_sign[i] = 1.0

    # rhs >= 0, then equilibrate the structural part of each row; slacks keep unit magnitude
    negative = b < 0
    structural[negative] *= -1.0
    b[negative] *= -1.0
    slack_sign[negative] *= -1.0
    scale = np.abs(structural).max(axis=1, initial=0.0)
    scale[scale == 0.0] = 1.0
    structural /= scale[:, None]
    b /= scale

    slack_rows = np.flatnonzero(slack_sign != 0.0)
    num_slack = slack_rows.size
    A = np.zeros((m, num_structural + num_slack))
    A[:, :num_structural] = structural
    unit_slack = np.full(m, -1)
    for k, i in enumerate(slack_rows):
        col = num_structural + k
        A[i, col] = slack_sign[i]
        if slack_sign[i] > 0:
            unit_slack[i] = col
    c_std = np.concatenate([c @ D, np.zeros(num_slack)])
    return _StandardForm(A, b, c_std, offset, D, num_structural, unit_slack)


class _Tableau:
    """Canonical-form tableau; the last column holds the basic solution, the last row the
    reduced costs with the negated objective in the corner.

    The constraint block is periodically recomputed from the original rows and the current basis
    so rounding from long pivot sequences does not accumulate.
    """

    def __init__(self, A: np.ndarray, b: np.ndarray, basis: list[int], options: ReferenceOptions):
        m, ncols = A.shape
        self.A = A.copy()
        self.b = b.copy()
        self.c = np.zeros(ncols)
        self.T = np.zeros((m + 1, ncols + 1))
        self.T[:m, :ncols] = A
        self.T[:m, -1] = b
        self.basis = list(basis)
        self.options = options
        self.iterations = 0

    @property
    def m(self) -> int:
        return self.T.shape[0] - 1

    def set_costs(self, c: np.ndarray) -> None:
        ncols = self.T.shape[1] - 1
        self.c = np.asarray(c, dtype=float).copy()
        self.T[-1, :ncols] = self.c
        self.T[-1, -1] = 0.0
        for i, j in enumerate(self.basis):
            if self.T[-1, j] != 0.0:
                self.T[-1] -= self.T[-1, j] * self.T[i]

    def _clamp_rhs(self) -> None:
        rhs = self.T[:-1, -1]
        rhs[(rhs < 0.0) & (rhs > -self.options.tolerance)] = 0.0

    def pivot(self, row: int, col: int) -> None:
        value = self.T[row, col]
        if abs(value) < self.options.min_pivot:
            raise NumericalError(f"pivot element {value:.3e} below {self.options.min_pivot:.0e}")
        self.T[row] /= value
        factors = self.T[:, col].copy()
        factors[row] = 0.0
        self.T -= np.outer(factors, self.T[row])
        # the entering column is a unit vector by construction
        self.T[:, col] = 0.0
        self.T[row, col] = 1.0
        self._clamp_rhs()
        self.basis[row] = col
        self.iterations += 1

    def refactor(self) -> None:
        """Rebuild the tableau from the original rows for the current basis."""
        m = self.m
        try:
            X = np.linalg.solve(self.A[:, self.basis], np.column_stack([self.A, self.b]))
        except np.linalg.LinAlgError:
            logger.debug("Basis singular at iteration %d; keeping the updated tableau", self.iterations)
            return
        self.T[:m] = X
        for i, j in enumerate(self.basis):
            self.T[:m, j] = 0.0
            self.T[i, j] = 1.0
        self._clamp_rhs()
        self.set_costs(self.c)

    def drop_columns(self, columns: np.ndarray) -> None:
        self.A = np.delete(self.A, columns, axis=1)
        self.c = np.delete(self.c, columns)
        self.T = np.delete(self.T, columns, axis=1)

    def run(self, eligible: np.ndarray, cost_scale: float) -> SolveStatus:
        """Bland-rule iterations until optimal, unbounded, or the iteration cap."""
        tol = self.options.tolerance
        opt_tol = tol * cost_scale
        fresh = False
        while True:
            if self.iterations >= self.options.max_iterations:
                return SolveStatus.LIMIT
            if not fresh and self.iterations % self.options.refactor_every == 0:
                self.refactor()
                fresh = True
            reduced = self.T[-1, :-1]
            candidates = np.flatnonzero((reduced < -opt_tol) & eligible)
            if candidates.size == 0:
                if fresh:
                    return SolveStatus.OPTIMAL
                # confirm optimality on a freshly computed tableau
                self.refactor()
                fresh = True
                continue
            col = int(candidates[0])
            column = self.T[:-1, col]
            rows = np.flatnonzero(column > tol)
            if rows.size == 0:
                return SolveStatus.UNBOUNDED
            ratios = np.maximum(self.T[rows, -1], 0.0) / column[rows]
            best = ratios.min()
            tied = rows[ratios - best <= self.options.tie_tolerance]
            # Bland: leave with the lowest-indexed basic variable among the exact ties
            row = int(min(tied, key=lambda i: self.basis[i]))
            self.pivot(row, col)
            fresh = False

    def drive_out(self, artificial: np.ndarray) -> None:
        """Pivot zero-level artificials out of the basis; drop rows that turn out redundant."""
        keep = []
        for i in range(self.m):
            if not artificial[self.basis[i]]:
                keep.append(i)
                continue
            entries = np.abs(self.T[i, :-1]) * ~artificial
            j = int(np.argmax(entries))
            if entries[j] > self.options.tolerance:
                self.pivot(i, j)
                keep.append(i)
        if len(keep) < self.m:
            logger.debug("Dropping %d redundant rows", self.m - len(keep))
            self.T = self.T[keep + [self.m]]
            self.A = self.A[keep]
            self.b = self.b[keep]
            self.basis = [self.basis[i] for i in keep]

    def primal(self, ncols: int) -> np.ndarray:
        y = np.zeros(ncols)
        for i, j in enumerate(self.basis):
            if j < ncols:
                y[j] = self.T[i, -1]
        return np.maximum(y, 0.0)


def solve_reference(model: LpModel, options: ReferenceOptions | None = None) -> Solution:
    options = options or ReferenceOptions()
    if model.num_rows > options.max_rows:
        raise SizeLimit(
            f"model has {model.num_rows} rows; the reference solver accepts at most {options.max_rows}"
        )
    started = time.perf_counter()
    sf = _standard_form(model)
    m, ncols = sf.A.shape

    # initial basis: unit slacks where available, artificials elsewhere
    need_artificial = [i for i in range(m) if sf.unit_slack[i] < 0]
    A1 = np.zeros((m, ncols + len(need_artificial)))
    A1[:, :ncols] = sf.A
    basis = [int(s) for s in sf.unit_slack]
    for k, i in enumerate(need_artificial):
        A1[i, ncols + k] = 1.0
        basis[i] = ncols + k
    artificial = np.zeros(A1.shape[1], dtype=bool)
    artificial[ncols:] = True

    tableau = _Tableau(A1, sf.b, basis, options)
    status = SolveStatus.OPTIMAL
    if need_artificial:
        tableau.set_costs(artificial.astype(float))
        status = tableau.run(np.ones(A1.shape[1], dtype=bool), 1.0)
        infeasibility = -tableau.T[-1, -1]
        bmax = float(np.abs(sf.b).max(initial=0.0))
        logger.debug(
            "Phase 1 finished after %d iterations, infeasibility %.3e",
            tableau.iterations,
            infeasibility,
        )
        if status is SolveStatus.LIMIT:
            return Solution(SolveStatus.LIMIT, wall_time_s=time.perf_counter() - started)
        if infeasibility > options.infeasibility_tolerance * (1.0 + bmax):
            return Solution(SolveStatus.INFEASIBLE, wall_time_s=time.perf_counter() - started)
        tableau.drive_out(artificial)
        tableau.drop_columns(np.flatnonzero(artificial))

    tableau.set_costs(sf.c)
    cost_scale = 1.0 + float(np.abs(sf.c).max(initial=0.0))
    status = tableau.run(np.ones(ncols, dtype=bool), cost_scale)
    elapsed = time.perf_counter() - started
    logger.debug("Phase 2 finished with '%s' after %d iterations", status.value, tableau.iterations)

    if status is SolveStatus.UNBOUNDED:
        return Solution(SolveStatus.UNBOUNDED, wall_time_s=elapsed)

    y = tableau.primal(ncols)
    x = sf.offset + sf.D @ y[: sf.num_structural]
    lb, ub = model.bounds()
    x = np.clip(x, lb, ub)
    return Solution(
        status=status,
        objective=model.evaluate_objective(x),
        values=x,
        wall_time_s=elapsed,
    )
