from collections import Counter
from dataclasses import dataclass

import numpy as np

from .system_config import SystemConfig
from .timeseries import DEMAND_PREFIX, TimeSeriesTable, demand_column


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.issues

    def codes(self) -> list[str]:
        return [issue.code for issue in self.issues]


def _duplicates(names) -> list[str]:
    return sorted(name for name, count in Counter(names).items() if count > 1)


def validate_inputs(config: SystemConfig, ts: TimeSeriesTable) -> ValidationReport:
    """Cross-check the system description against the time series. Issues are data, not
    exceptions; an ok report means the base model can be built."""
    issues: list[ValidationIssue] = []

    def issue(code, message):
        issues.append(ValidationIssue(code, message))

    zones = set(config.zone_names)
    for kind, names in (
        ("zone", config.zone_names),
        ("generator", [g.name for g in config.generators]),
        ("storage", [s.name for s in config.storages]),
    ):
        for name in _duplicates(names):
            issue("duplicate name", f"{kind} name '{name}' is used more than once")

    for gen in config.generators:
        if gen.zone not in zones:
            issue("unknown zone", f"generator '{gen.name}' references unknown zone '{gen.zone}'")
        if gen.kind == "vre" and not ts.has_column(gen.availability_series):
            issue(
                "missing availability series",
                f"generator '{gen.name}' needs column '{gen.availability_series}'",
            )
    for store in config.storages:
        if store.zone not in zones:
            issue("unknown zone", f"storage '{store.name}' references unknown zone '{store.zone}'")
    for line in config.lines:
        for end in (line.from_zone, line.to_zone):
            if end not in zones:
                issue("unknown zone", f"line '{line.name}' references unknown zone '{end}'")
        if line.from_zone == line.to_zone:
            issue("self loop", f"line '{line.name}' connects a zone to itself")

    for zone in config.zone_names:
        if not ts.has_column(demand_column(zone)):
            issue("missing demand series", f"no column '{demand_column(zone)}' for zone '{zone}'")

    if ts.H != config.horizon.H:
        issue("length mismatch", f"time series has {ts.H} steps, horizon.H is {config.horizon.H}")
    if config.aggregation.num_representatives > config.N:
        issue(
            "too many representatives",
            f"num_representatives={config.aggregation.num_representatives} exceeds N={config.N}",
        )

    for name in ts.columns:
        values = ts.column(name)
        if np.isnan(values).any():
            issue("missing values", f"column '{name}' has missing values")
        elif name.startswith(DEMAND_PREFIX):
            if (values < 0).any():
                issue("negative demand", f"column '{name}' has negative values")
        elif (values < 0).any() or (values > 1).any():
            issue("availability out of range", f"column '{name}' leaves [0, 1]")

    return ValidationReport(tuple(issues))
