"""Run an external solver as a subprocess.

The command template must contain the placeholders `{mps}` and `{sol}`. The command reads the
MPS file and writes a solution file in the grammar below; wrapping a concrete solver so it writes
this grammar is left to a small user script.

    status <optimal|infeasible|unbounded|limit>
    objective <float>
    <variable-name> <value>
    ...

Variables missing from the listing are taken as zero.
"""

import logging
import shlex
import subprocess
import time
from pathlib import Path

import numpy as np

from ..errors import ExitCodeError, SolutionParseError, SolverTimeout, SpawnError
from .model import LpModel, Solution, SolveStatus
from .mps import write_mps

logger = logging.getLogger(__name__)

_FILE_STATUSES = {
    "optimal": SolveStatus.OPTIMAL,
    "infeasible": SolveStatus.INFEASIBLE,
    "unbounded": SolveStatus.UNBOUNDED,
    "limit": SolveStatus.LIMIT,
}


def build_command(command_template: str, mps_path: Path, sol_path: Path) -> list[str]:
    if "{mps}" not in command_template or "{sol}" not in command_template:
        raise SpawnError("command template must contain both {mps} and {sol} placeholders")
    # split first so paths containing spaces stay single arguments
    return [
        token.replace("{mps}", str(mps_path)).replace("{sol}", str(sol_path))
        for token in shlex.split(command_template)
    ]


def parse_solution_file(path: Path, model: LpModel) -> tuple[SolveStatus, float | None, np.ndarray | None]:
    try:
        lines = [line.split() for line in Path(path).read_text().splitlines() if line.strip()]
    except OSError as e:
        raise SolutionParseError(f"cannot read solution file {path}: {e}") from e

    if not lines or lines[0][0] != "status" or len(lines[0]) != 2:
        raise SolutionParseError(f"{path}: first line must be 'status <word>'")
    word = lines[0][1].lower()
    if word not in _FILE_STATUSES:
        raise SolutionParseError(f"{path}: unknown status {word!r}")
    status = _FILE_STATUSES[word]

    if len(lines) < 2 or lines[1][0] != "objective" or len(lines[1]) != 2:
        if status in (SolveStatus.INFEASIBLE, SolveStatus.UNBOUNDED) and len(lines) == 1:
            return status, None, None
        raise SolutionParseError(f"{path}: second line must be 'objective <float>'")
    try:
        objective = float(lines[1][1])
    except ValueError:
        raise SolutionParseError(f"{path}: objective {lines[1][1]!r} is not a number") from None

    if status not in (SolveStatus.OPTIMAL, SolveStatus.LIMIT):
        return status, None, None

    values = np.zeros(model.num_vars)
    for lineno, tokens in enumerate(lines[2:], start=3):
        if len(tokens) != 2:
            raise SolutionParseError(f"{path}:{lineno}: expected '<name> <value>'")
        name, raw = tokens
        if name not in model._var_index:
            raise SolutionParseError(f"{path}:{lineno}: unknown variable {name!r}")
        try:
            values[model._var_index[name]] = float(raw)
        except ValueError:
            raise SolutionParseError(f"{path}:{lineno}: value {raw!r} is not a number") from None
    return status, objective, values


def solve_external(
    model: LpModel,
    command_template: str,
    workdir: str | Path,
    time_limit_s: float | None = None,
) -> Solution:
    workdir = Path(workdir)
    workdir.mkdir(parents=True, exist_ok=True)
    mps_path = workdir / f"{model.name}.mps"
    sol_path = workdir / f"{model.name}.sol"
    sol_path.unlink(missing_ok=True)
    write_mps(model, mps_path)
    command = build_command(command_template, mps_path, sol_path)

    logger.info("Running external solver: %s", " ".join(command))
    started = time.perf_counter()
    try:
        completed = subprocess.run(
            command, capture_output=True, text=True, timeout=time_limit_s, cwd=workdir
        )
    except subprocess.TimeoutExpired as e:
        raise SolverTimeout(f"solver exceeded the time limit of {time_limit_s} s") from e
    except OSError as e:
        raise SpawnError(f"cannot start solver command {command[0]!r}: {e}") from e
    elapsed = time.perf_counter() - started

    if completed.returncode != 0:
        raise ExitCodeError(completed.returncode, completed.stderr)

    status, objective, values = parse_solution_file(sol_path, model)
    if values is not None:
        # the objective is recomputed from the values so it always equals c'x
        reported = objective
        objective = model.evaluate_objective(values)
        if reported is not None and abs(reported - objective) > 1e-6 * (1 + abs(objective)):
            logger.warning(
                "Solver reported objective %.9g but the listed values give %.9g", reported, objective
            )
    return Solution(status=status, objective=objective, values=values, wall_time_s=elapsed)
