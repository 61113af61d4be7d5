from .external import solve_external
from .model import INF, LpModel, ModelStats, Sense, Solution, SolveStatus, model_stats
from .mps import parse_mps, write_mps
from .registry import SolverRegistry, solver_from_config
from .simplex import ReferenceOptions, solve_reference

__all__ = [
    "INF",
    "LpModel",
    "ModelStats",
    "ReferenceOptions",
    "Sense",
    "Solution",
    "SolveStatus",
    "SolverRegistry",
    "model_stats",
    "parse_mps",
    "solve_external",
    "solve_reference",
    "solver_from_config",
    "write_mps",
]
