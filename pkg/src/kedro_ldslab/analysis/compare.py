import dataclasses
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import pandas as pd
from joblib import Parallel, delayed

from ..cem.model import CemHandles, build_base_model
from ..datasets.period_mapping import PeriodMapping
from ..datasets.system_config import SystemConfig
from ..datasets.timeseries import TimeSeriesTable
from ..errors import SolverError
from ..formulations import Formulation, LdsHandles, apply_formulation
from ..lp.model import LpModel, Solution, SolveStatus, model_stats
from .soc import SocTrajectory, reconstruct_all
from .violations import ViolationReport, average_violations, count_violations, total_violations

logger = logging.getLogger(__name__)

Solver = Callable[[LpModel], Solution]

REPORT_COLUMNS = [
    "formulation",
    "status",
    "objective",
    "rows",
    "vars",
    "nonzeros",
    "build_s",
    "solve_s",
    "violations",
    "lds_energy_capacity",
]


@dataclass(frozen=True, eq=False)
class ComparisonEntry:
    formulation: Formulation
    status: str
    objective: float | None
    rows: int
    vars: int
    nonzeros: int
    build_s: float
    solve_s: float
    violations: int | None = None
    lds_energy_capacity: float | None = None
    message: str = ""
    capacities: dict[str, float] = field(default_factory=dict)
    violation_reports: tuple[ViolationReport, ...] = ()
    trajectories: tuple[SocTrajectory, ...] = ()

    @property
    def optimal(self) -> bool:
        return self.status == SolveStatus.OPTIMAL.value

    @property
    def average_violations(self) -> float | None:
        """Violations per long-duration storage."""
        return average_violations(self.violation_reports) if self.optimal else None

    def as_record(self) -> dict:
        return {
            "formulation": self.formulation.value,
            "status": self.status,
            "objective": self.objective,
            "rows": self.rows,
            "vars": self.vars,
            "nonzeros": self.nonzeros,
            "build_s": self.build_s,
            "solve_s": self.solve_s,
            "violations": self.violations,
            "lds_energy_capacity": self.lds_energy_capacity,
        }


@dataclass(frozen=True, eq=False)
class ComparisonReport:
    entries: tuple[ComparisonEntry, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def entry(self, formulation: Formulation | str) -> ComparisonEntry:
        formulation = Formulation(formulation)
        for e in self.entries:
            if e.formulation is formulation:
                return e
        raise KeyError(formulation.value)

    @property
    def all_optimal(self) -> bool:
        return all(e.optimal for e in self.entries)

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame([e.as_record() for e in self.entries], columns=REPORT_COLUMNS)
        for column in ("rows", "vars", "nonzeros", "violations"):
            frame[column] = frame[column].astype("Int64")
        for column in ("objective", "build_s", "solve_s", "lds_energy_capacity"):
            frame[column] = frame[column].astype(float)
        return frame


@dataclass(frozen=True, eq=False)
class FormulationRun:
    """Everything produced for one formulation, for callers that need more than the report."""

    entry: ComparisonEntry
    model: LpModel
    lds_handles: LdsHandles
    solution: Solution | None


def evaluate_formulation(
    base_model: LpModel,
    cem_handles: CemHandles,
    config: SystemConfig,
    mapping: PeriodMapping,
    formulation: Formulation,
    solver: Solver,
    base_build_s: float = 0.0,
    tol_rel: float = 1e-6,
) -> FormulationRun:
    """Clone the base model, apply one formulation, solve it and audit the trajectories."""
    formulation = Formulation(formulation)
    storages = config.lds_storages

    started = time.perf_counter()
    model = base_model.copy()
    model.name = f"ldslab-{formulation.value}"
    lds_handles = apply_formulation(formulation, model, cem_handles, mapping, storages)
    build_s = base_build_s + time.perf_counter() - started
    stats = model_stats(model, build_s)

    started = time.perf_counter()
    try:
        solution = solver(model)
    except SolverError as e:
        logger.error("Solving %s failed: %s", formulation.value, e)
        entry = ComparisonEntry(
            formulation=formulation,
            status=SolveStatus.ERROR.value,
            objective=None,
            rows=stats.num_rows,
            vars=stats.num_vars,
            nonzeros=stats.num_nonzeros,
            build_s=build_s,
            solve_s=time.perf_counter() - started,
            message=str(e),
        )
        return FormulationRun(entry, model, lds_handles, None)
    solve_s = time.perf_counter() - started

    violations = capacity = None
    capacities: dict[str, float] = {}
    reports: tuple[ViolationReport, ...] = ()
    trajectories: tuple[SocTrajectory, ...] = ()
    if solution.status is SolveStatus.OPTIMAL:
        trajectories = tuple(reconstruct_all(solution, lds_handles, cem_handles, mapping, storages))
        reports = tuple(count_violations(traj, tol_rel=tol_rel) for traj in trajectories)
        violations = total_violations(reports)
        capacities = {traj.storage: traj.capacity for traj in trajectories}
        capacity = float(sum(capacities.values()))
    logger.info(
        "%s: status %s, objective %s, %d rows, %s violations, solved in %.3f s",
        formulation.value,
        solution.status.value,
        "n/a" if solution.objective is None else f"{solution.objective:.9g}",
        stats.num_rows,
        "n/a" if violations is None else violations,
        solve_s,
    )
    entry = ComparisonEntry(
        formulation=formulation,
        status=solution.status.value,
        objective=solution.objective,
        rows=stats.num_rows,
        vars=stats.num_vars,
        nonzeros=stats.num_nonzeros,
        build_s=build_s,
        solve_s=solve_s,
        violations=violations,
        lds_energy_capacity=capacity,
        message=solution.message,
        capacities=capacities,
        violation_reports=reports,
        trajectories=trajectories,
    )
    return FormulationRun(entry, model, lds_handles, solution)


def compare_formulations(
    config: SystemConfig,
    ts: TimeSeriesTable,
    mapping: PeriodMapping,
    formulations: Sequence[Formulation | str],
    solver: Solver,
    n_jobs: int = 1,
    record_timings: bool = True,
    tol_rel: float = 1e-6,
) -> ComparisonReport:
    """
    Build the base model once, then evaluate every requested formulation on its own clone.

    Entries follow the request order. A solver failure marks its entry with status `error`
    and leaves the other formulations untouched. With `record_timings=False` the build and
    solve times are reported as 0 so reports of identical runs are byte-identical.
    """
    formulations = [Formulation(f) for f in formulations]
    if not formulations:
        return ComparisonReport()

    started = time.perf_counter()
    base_model, cem_handles = build_base_model(config, ts, mapping)
    base_build_s = time.perf_counter() - started

    runs = Parallel(n_jobs=n_jobs)(
        delayed(evaluate_formulation)(
            base_model, cem_handles, config, mapping, f, solver, base_build_s, tol_rel
        )
        for f in formulations
    )
    entries = [run.entry for run in runs]
    if not record_timings:
        entries = [_without_timings(e) for e in entries]
    return ComparisonReport(tuple(entries))


def _without_timings(entry: ComparisonEntry) -> ComparisonEntry:
    return dataclasses.replace(entry, build_s=0.0, solve_s=0.0)


def capacity_difference(
    report: ComparisonReport,
    formulation: Formulation | str = Formulation.ORIGINAL,
    reference: Formulation | str = Formulation.IMPLICIT_MINMAX,
) -> float:
    """Installed long-duration energy capacity of `formulation` relative to `reference`, in
    percent. NaN when either is missing or the reference capacity is zero."""
    value = report.entry(formulation).lds_energy_capacity
    base = report.entry(reference).lds_energy_capacity
    if value is None or base is None or math.isclose(base, 0.0, abs_tol=1e-12):
        return math.nan
    return float(100.0 * (value - base) / base)

