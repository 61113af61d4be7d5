"""Command line entry point `ldslab`.

Exit codes: 0 success, 1 invalid data or usage, 2 solver failure, 3 internal error.
Every run writes `manifest.yml` to the output directory, and `config.resolved.toml` once the
system description has been read.
"""

import hashlib
import logging
import platform
import sys
import time
from dataclasses import dataclass, field
from importlib import metadata
from pathlib import Path

import click
import pandas as pd
import yaml
from rich.console import Console
from rich.logging import RichHandler

from . import __version__
from .analysis.compare import ComparisonReport, compare_formulations, evaluate_formulation
from .analysis.report import violations_frame, write_report_csv, write_trajectory_csv, write_violations_csv
from .cem.model import build_base_model
from .datasets.period_mapping import PeriodMapping, write_period_mapping
from .datasets.system_config import SystemConfig, load_config, save_config
from .datasets.timeseries import TimeSeriesTable, load_timeseries
from .datasets.validation import validate_inputs
from .errors import DataError, InvalidInputs, LdsLabError
from .formulations import Formulation, apply_formulation
from .lp.mps import write_mps
from .lp.registry import solver_from_config
from .pipelines.aggregation.nodes import identity_mapping, make_period_features, make_period_mapping

logger = logging.getLogger(__name__)

OK, DATA_ERROR, SOLVER_ERROR, INTERNAL_ERROR = 0, 1, 2, 3
SUBCOMMANDS = ("aggregate", "solve", "compare", "validate-soc", "export-mps")
FORMULATION_CHOICES = ["all"] + [f.value for f in Formulation]
REPORTED_PACKAGES = ("kedro", "numpy", "scipy", "pandas", "scikit-learn", "pydantic")


@dataclass
class CliInvocation:
    subcommand: str
    config_path: Path
    timeseries_path: Path
    output_dir: Path = Path("out")
    formulations: tuple[str, ...] = ("all",)
    num_representatives: int | None = None
    seed: int | None = None
    solver_backend: str | None = None
    full_resolution: bool = False
    n_jobs: int = 1
    record_timings: bool = True
    verbose: bool = False

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        self.config_path = Path(self.config_path)
        self.timeseries_path = Path(self.timeseries_path)
        self.output_dir = Path(self.output_dir)


@dataclass
class _RunState:
    """What the manifest reports about a run."""

    config: SystemConfig | None = None
    mapping: PeriodMapping | None = None
    outputs: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    def timed(self, stage: str, started: float) -> None:
        self.timings[stage] = round(time.perf_counter() - started, 6)


def configure_logging(verbose: bool = False) -> None:
    package_logger = logging.getLogger("kedro_ldslab")
    for handler in list(package_logger.handlers):
        if isinstance(handler, RichHandler):
            package_logger.removeHandler(handler)
    handler = RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=False)
    handler.setFormatter(logging.Formatter("%(message)s"))
    package_logger.addHandler(handler)
    package_logger.setLevel(logging.DEBUG if verbose else logging.INFO)
    package_logger.propagate = False


def _versions() -> dict[str, str]:
    versions = {"python": platform.python_version(), "kedro_ldslab": __version__}
    for package in REPORTED_PACKAGES:
        try:
            versions[package] = metadata.version(package)
        except metadata.PackageNotFoundError:
            versions[package] = "not installed"
    return versions


def _peak_rss_mb() -> float | None:
    try:
        import resource
    except ImportError:  # not available on Windows
        return None
    peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    # kilobytes on Linux, bytes on macOS
    return round(peak / (1024 * 1024 if sys.platform == "darwin" else 1024), 3)


def _digest(path: Path) -> str | None:
    try:
        return hashlib.sha256(path.read_bytes()).hexdigest()
    except OSError:
        return None


def _write_manifest(invocation: CliInvocation, state: _RunState, exit_code: int) -> None:
    config = state.config
    manifest = {
        "subcommand": invocation.subcommand,
        "exit_code": exit_code,
        "inputs": {
            "config": {"path": str(invocation.config_path), "sha256": _digest(invocation.config_path)},
            "timeseries": {"path": str(invocation.timeseries_path), "sha256": _digest(invocation.timeseries_path)},
        },
        "formulations": list(invocation.formulations),
        "seed": config.aggregation.seed if config else invocation.seed or 1,
        "num_representatives": config.aggregation.num_representatives if config else invocation.num_representatives,
        "full_resolution": invocation.full_resolution,
        "solver_backend": config.solver.backend if config else invocation.solver_backend,
        "mapping": None
        if state.mapping is None
        else {
            "designated_periods": [n + 1 for n in state.mapping.designated],
            "weights": list(state.mapping.weight),
        },
        "versions": _versions(),
        "timings_s": state.timings,
        "peak_rss_mb": _peak_rss_mb(),
        "outputs": state.outputs,
    }
    path = invocation.output_dir / "manifest.yml"
    try:
        invocation.output_dir.mkdir(parents=True, exist_ok=True)
        path.write_text(yaml.safe_dump(manifest, sort_keys=False))
    except OSError as e:
        logger.warning("Could not write %s: %s", path, e)


def _load_inputs(invocation: CliInvocation, state: _RunState) -> tuple[SystemConfig, TimeSeriesTable]:
    started = time.perf_counter()
    config = load_config(invocation.config_path).with_overrides(
        num_representatives=invocation.num_representatives,
        seed=invocation.seed,
        backend=invocation.solver_backend,
    )
    state.config = config
    resolved = invocation.output_dir / "config.resolved.toml"
    save_config(config, resolved)
    state.outputs.append(str(resolved))

    ts = load_timeseries(invocation.timeseries_path, config)
    report = validate_inputs(config, ts)
    if not report.ok:
        raise InvalidInputs(report.issues)
    state.timed("load", started)
    return config, ts


def _aggregate(invocation: CliInvocation, state: _RunState, config: SystemConfig, ts: TimeSeriesTable) -> PeriodMapping:
    started = time.perf_counter()
    if invocation.full_resolution:
        mapping = identity_mapping(config.N, config.horizon.T)
    else:
        mapping = make_period_mapping(make_period_features(ts, config), config)
    state.mapping = mapping
    state.timed("aggregate", started)
    return mapping


def _solver(invocation: CliInvocation, config: SystemConfig):
    return solver_from_config(config.solver, workdir=str(invocation.output_dir / "solver"))


def _formulations(invocation: CliInvocation) -> list[Formulation]:
    try:
        return Formulation.parse_many(invocation.formulations)
    except ValueError as e:
        raise DataError(str(e)) from None


def _write_trajectories(invocation: CliInvocation, state: _RunState, entry) -> None:
    for traj in entry.trajectories:
        path = write_trajectory_csv(
            traj, invocation.output_dir / f"soc_{entry.formulation.value}_{traj.storage}.csv"
        )
        state.outputs.append(str(path))


def _cmd_aggregate(invocation, state, config, ts) -> int:
    mapping = _aggregate(invocation, state, config, ts)
    state.outputs += [str(p) for p in write_period_mapping(mapping, invocation.output_dir)]
    return OK


def _cmd_solve(invocation, state, config, ts) -> int:
    formulations = _formulations(invocation)
    if len(formulations) != 1:
        raise DataError("solve takes exactly one formulation; use compare for several")
    mapping = _aggregate(invocation, state, config, ts)
    started = time.perf_counter()
    base_model, cem_handles = build_base_model(config, ts, mapping)
    run = evaluate_formulation(
        base_model,
        cem_handles,
        config,
        mapping,
        formulations[0],
        _solver(invocation, config),
        base_build_s=time.perf_counter() - started,
    )
    state.timed("solve", started)
    report_path = write_report_csv(ComparisonReport((run.entry,)), invocation.output_dir / "report.csv")
    state.outputs.append(str(report_path))
    if run.solution is not None and run.solution.has_values:
        solution_path = invocation.output_dir / "solution.csv"
        _write_solution(run.model, run.solution, solution_path)
        state.outputs.append(str(solution_path))
    _write_trajectories(invocation, state, run.entry)
    if run.entry.violation_reports:
        path = write_violations_csv(run.entry.violation_reports, invocation.output_dir / "violations.csv")
        state.outputs.append(str(path))
    if not run.entry.optimal:
        click.echo(f"ldslab: {formulations[0].value} ended with status {run.entry.status} {run.entry.message}".rstrip(), err=True)
        return SOLVER_ERROR
    return OK


def _write_solution(model, solution, path: Path) -> None:
    frame = pd.DataFrame({"variable": [v.name for v in model.variables], "value": solution.values})
    frame.to_csv(path, index=False, float_format="%.9g", lineterminator="\n")


def _cmd_compare(invocation, state, config, ts) -> int:
    mapping = _aggregate(invocation, state, config, ts)
    started = time.perf_counter()
    report = compare_formulations(
        config,
        ts,
        mapping,
        _formulations(invocation),
        _solver(invocation, config),
        n_jobs=invocation.n_jobs,
        record_timings=invocation.record_timings,
    )
    state.timed("compare", started)
    path = write_report_csv(report, invocation.output_dir / "report.csv")
    state.outputs.append(str(path))
    failed = [e for e in report if not e.optimal]
    for entry in failed:
        click.echo(f"ldslab: {entry.formulation.value} ended with status {entry.status} {entry.message}".rstrip(), err=True)
    return SOLVER_ERROR if failed else OK


def _cmd_validate_soc(invocation, state, config, ts) -> int:
    mapping = _aggregate(invocation, state, config, ts)
    started = time.perf_counter()
    report = compare_formulations(config, ts, mapping, _formulations(invocation), _solver(invocation, config))
    state.timed("validate", started)
    frames = []
    for entry in report:
        _write_trajectories(invocation, state, entry)
        frames.append(violations_frame(entry.violation_reports).assign(formulation=entry.formulation.value))
        logger.info(
            "%s: %s violations (%.3g per storage)",
            entry.formulation.value,
            "n/a" if entry.violations is None else entry.violations,
            entry.average_violations or 0.0,
        )
    if frames:
        table = pd.concat(frames, ignore_index=True)
        table = table[["formulation"] + [c for c in table.columns if c != "formulation"]]
        path = invocation.output_dir / "violations.csv"
        table.to_csv(path, index=False, float_format="%.9g", lineterminator="\n")
        state.outputs.append(str(path))
    failed = [e for e in report if not e.optimal]
    return SOLVER_ERROR if failed else OK


def _cmd_export_mps(invocation, state, config, ts) -> int:
    mapping = _aggregate(invocation, state, config, ts)
    started = time.perf_counter()
    base_model, cem_handles = build_base_model(config, ts, mapping)
    for formulation in _formulations(invocation):
        model = base_model.copy()
        model.name = f"ldslab-{formulation.value}"
        apply_formulation(formulation, model, cem_handles, mapping, config.lds_storages)
        path = invocation.output_dir / f"{model.name}.mps"
        write_mps(model, path)
        state.outputs.append(str(path))
    state.timed("export", started)
    return OK


_COMMANDS = {
    "aggregate": _cmd_aggregate,
    "solve": _cmd_solve,
    "compare": _cmd_compare,
    "validate-soc": _cmd_validate_soc,
    "export-mps": _cmd_export_mps,
}


def run(invocation: CliInvocation) -> int:
    """Execute one invocation and return its exit code. Never raises for user errors."""
    configure_logging(invocation.verbose)
    state = _RunState()
    started = time.perf_counter()
    exit_code = INTERNAL_ERROR
    try:
        invocation.output_dir.mkdir(parents=True, exist_ok=True)
        config, ts = _load_inputs(invocation, state)
        exit_code = _COMMANDS[invocation.subcommand](invocation, state, config, ts)
    except LdsLabError as e:
        click.echo(f"ldslab: error: {e}", err=True)
        exit_code = e.exit_code
    except OSError as e:
        click.echo(f"ldslab: error: {e}", err=True)
        exit_code = DATA_ERROR
    except Exception as e:
        logger.debug("Unexpected failure", exc_info=True)
        click.echo(f"ldslab: internal error: {type(e).__name__}: {e}", err=True)
        exit_code = INTERNAL_ERROR
    state.timed("total", started)
    _write_manifest(invocation, state, exit_code)
    return exit_code


class _LdsLabGroup(click.Group):
    """Click group reporting usage errors with exit code 1 instead of click's 2."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.ClickException as e:
            e.show()
            rv = DATA_ERROR
        except click.Abort:
            click.echo("Aborted!", err=True)
            rv = DATA_ERROR
        if standalone_mode:
            sys.exit(rv or OK)
        return rv


def _common_options(func):
    options = [
        click.option("--config", "config_path", required=True, help="System description (TOML)."),
        click.option("--ts", "timeseries_path", required=True, help="Time series (CSV)."),
        click.option("-o", "--out", "output_dir", default="out", show_default=True, help="Output directory."),
        click.option("-k", "--num-representatives", type=click.IntRange(min=1), help="Override aggregation.num_representatives."),
        click.option("--seed", type=int, help="Override aggregation.seed."),
        click.option("--full-resolution", is_flag=True, help="Use every period as its own representative."),
        click.option("-v", "--verbose", is_flag=True, help="Log at DEBUG level."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _formulation_option(default: str | None = "all", multiple: bool = True):
    return click.option(
        "--formulation",
        "formulations",
        type=click.Choice(FORMULATION_CHOICES),
        multiple=multiple,
        default=(default,) if multiple and default else default,
        required=default is None,
        show_default=True,
        help="LDS formulation; repeat the flag or use `all`.",
    )


def _solver_option(func):
    return click.option(
        "--solver", "solver_backend", type=click.Choice(["reference", "external"]), help="Override solver.backend."
    )(func)


@click.group(cls=_LdsLabGroup, context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="ldslab")
def cli():
    """Capacity-expansion LPs with long-duration storage over representative periods."""


@cli.command()
@_common_options
@click.pass_context
def aggregate(ctx, **options):
    """Cluster input periods and write the period mapping."""
    ctx.exit(run(CliInvocation("aggregate", **options)))


@cli.command()
@_common_options
@_formulation_option(default=None, multiple=False)
@_solver_option
@click.pass_context
def solve(ctx, formulations, **options):
    """Solve one formulation, writing its solution, trajectories and violations."""
    ctx.exit(run(CliInvocation("solve", formulations=(formulations,), **options)))


@cli.command()
@_common_options
@_formulation_option()
@_solver_option
@click.option("-j", "--jobs", "n_jobs", type=int, default=1, show_default=True, help="Formulations solved in parallel.")
@click.option("--no-timings", "no_timings", is_flag=True, help="Report times as 0 for reproducible reports.")
@click.pass_context
def compare(ctx, formulations, no_timings, **options):
    """Solve several formulations and write report.csv."""
    ctx.exit(
        run(CliInvocation("compare", formulations=tuple(formulations), record_timings=not no_timings, **options))
    )


@cli.command("validate-soc")
@_common_options
@_formulation_option()
@_solver_option
@click.pass_context
def validate_soc(ctx, formulations, **options):
    """Reconstruct the state of charge and audit it against the installed capacity."""
    ctx.exit(run(CliInvocation("validate-soc", formulations=tuple(formulations), **options)))


@cli.command("export-mps")
@_common_options
@_formulation_option()
@click.pass_context
def export_mps(ctx, formulations, **options):
    """Write the model of each formulation as an MPS file."""
    ctx.exit(run(CliInvocation("export-mps", formulations=tuple(formulations), **options)))


def main() -> None:
    cli(prog_name="ldslab")
