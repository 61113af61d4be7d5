from .compare import (
    ComparisonEntry,
    ComparisonReport,
    FormulationRun,
    capacity_difference,
    compare_formulations,
    evaluate_formulation,
)
from .counts import count_rows_closed_form, count_variables_closed_form
from .report import read_report_csv, write_report_csv, write_trajectory_csv, write_violations_csv
from .soc import SocTrajectory, reconstruct_all, reconstruct_soc
from .violations import ViolationReport, average_violations, count_violations, total_violations

__all__ = [
    "ComparisonEntry",
    "ComparisonReport",
    "FormulationRun",
    "SocTrajectory",
    "ViolationReport",
    "average_violations",
    "capacity_difference",
    "compare_formulations",
    "count_rows_closed_form",
    "count_variables_closed_form",
    "count_violations",
    "evaluate_formulation",
    "read_report_csv",
    "reconstruct_all",
    "reconstruct_soc",
    "total_violations",
    "write_report_csv",
    "write_trajectory_csv",
    "write_violations_csv",
]
