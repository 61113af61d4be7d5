import logging

import pandas as pd

from ...analysis.compare import FormulationRun, compare_formulations, evaluate_formulation
from ...analysis.report import trajectory_frame, violations_frame
from ...cem.model import build_base_model
from ...datasets.period_mapping import PeriodMapping
from ...datasets.system_config import SystemConfig
from ...datasets.timeseries import TimeSeriesTable
from ...errors import SolverError
from ...formulations import Formulation
from ...lp.model import LpModel
from ...lp.registry import solver_from_config

logger = logging.getLogger(__name__)


def _solver(config: SystemConfig, solver_params: dict | None):
    return solver_from_config(config.solver, **(solver_params or {}))


def compare_node(
    config: SystemConfig,
    ts: TimeSeriesTable,
    mapping: PeriodMapping,
    comparison_params: dict,
    solver_params: dict | None = None,
) -> pd.DataFrame:
    """Run every configured formulation and return the report table."""
    report = compare_formulations(
        config,
        ts,
        mapping,
        Formulation.parse_many(comparison_params.get("formulations", "all")),
        _solver(config, solver_params),
        n_jobs=comparison_params.get("n_jobs", 1),
        record_timings=comparison_params.get("record_timings", True),
        tol_rel=comparison_params.get("tolerance", 1e-6),
    )
    for entry in report:
        if not entry.optimal:
            logger.warning("%s ended with status %s %s", entry.formulation.value, entry.status, entry.message)
    return report.to_frame()


def solve_node(
    config: SystemConfig,
    ts: TimeSeriesTable,
    mapping: PeriodMapping,
    formulation: str,
    solver_params: dict | None = None,
    tolerance: float = 1e-6,
) -> FormulationRun:
    base_model, cem_handles = build_base_model(config, ts, mapping)
    run = evaluate_formulation(
        base_model, cem_handles, config, mapping, Formulation(formulation), _solver(config, solver_params), tol_rel=tolerance
    )
    if run.entry.status == "error":
        raise SolverError(run.entry.message)
    return run


def formulation_model(run: FormulationRun) -> LpModel:
    return run.model


def soc_trajectories(run: FormulationRun) -> pd.DataFrame:
    """Long table `storage,step,soc` of every reconstructed trajectory."""
    frames = [trajectory_frame(traj).assign(storage=traj.storage) for traj in run.entry.trajectories]
    if not frames:
        return pd.DataFrame(columns=["storage", "step", "soc"])
    return pd.concat(frames, ignore_index=True)[["storage", "step", "soc"]]


def violation_table(run: FormulationRun) -> pd.DataFrame:
    return violations_frame(run.entry.violation_reports)
