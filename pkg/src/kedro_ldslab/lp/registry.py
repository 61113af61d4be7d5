import functools
import logging
import os
import tempfile

from ..errors import SpawnError
from ..registry import Registry
from .external import solve_external
from .model import LpModel, Solution
from .simplex import ReferenceOptions, solve_reference

logger = logging.getLogger(__name__)

SOLVER_CMD_ENV = "LDSLAB_SOLVER_CMD"


class SolverRegistry(Registry):
    kind = "solver backend"


@SolverRegistry.register("reference")
def reference_solver_factory(
    max_rows: int = 5000, max_iterations: int = 200_000, **kwargs
):
    options = ReferenceOptions(max_rows=max_rows, max_iterations=max_iterations)
    return functools.partial(solve_reference, options=options)


@SolverRegistry.register("external")
def external_solver_factory(
    command_template: str | None = None,
    time_limit_s: float | None = None,
    workdir: str | None = None,
    **kwargs,
):
    command_template = os.environ.get(SOLVER_CMD_ENV) or command_template
    if not command_template:
        raise SpawnError(
            f"external backend needs solver.command_template or ${SOLVER_CMD_ENV}"
        )

    def solve(model: LpModel) -> Solution:
        if workdir is not None:
            return solve_external(model, command_template, workdir, time_limit_s)
        with tempfile.TemporaryDirectory(prefix="ldslab-") as tmp:
            return solve_external(model, command_template, tmp, time_limit_s)

    return solve


def solver_from_config(solver_config, **overrides):
    """Build the solve callable for a `SolverConfig`, with keyword overrides on top."""
    params = solver_config.model_dump(exclude_none=True)
    params.update({k: v for k, v in overrides.items() if v is not None})
    backend = params.pop("backend")
    logger.debug("Using solver backend '%s'", backend)
    return SolverRegistry.get(backend, **params)
