"""Base capacity-expansion LP over representative periods.

Every zone balances generation, storage flows, line flows and non-served energy at every step of
every representative period. Long-duration storages get only their flows and capacities here;
their state of charge is added by one of the formulations in `kedro_ldslab.formulations`.

Variable and row names use 1-based indices, e.g. `g[gas,2,5]` is the output of generator `gas`
at step 5 of representative 2.
"""

import logging
import time
from dataclasses import dataclass, field

import numpy as np

from ..datasets.period_mapping import PeriodMapping
from ..datasets.system_config import StorageConfig, SystemConfig
from ..datasets.timeseries import TimeSeriesTable
from ..errors import MappingMismatch, StepIndexError
from ..lp.model import LpModel, Sense

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StorageHandles:
    energy: int  # C
    power: int  # P
    charge: np.ndarray  # (W, T)
    discharge: np.ndarray  # (W, T)
    # only for storages without the LDS flag: cyclic per-representative content
    soc: np.ndarray | None = None


@dataclass(frozen=True, eq=False)
class CemHandles:
    W: int
    T: int
    dt: float
    generator_capacity: dict[str, int] = field(default_factory=dict)
    generation: dict[str, np.ndarray] = field(default_factory=dict)
    storages: dict[str, StorageHandles] = field(default_factory=dict)
    nse: dict[str, np.ndarray] = field(default_factory=dict)
    line_capacity: dict[str, int] = field(default_factory=dict)
    flow_forward: dict[str, np.ndarray] = field(default_factory=dict)
    flow_reverse: dict[str, np.ndarray] = field(default_factory=dict)
    balance_rows: dict[str, np.ndarray] = field(default_factory=dict)


def _label(*parts) -> str:
    return ",".join(str(p) for p in parts)


def _grid(model: LpModel, prefix: str, W: int, T: int, **kwargs) -> np.ndarray:
    """(W, T) block of variables named `prefix,w,t]` with 1-based w and t."""
    handles = np.empty((W, T), dtype=int)
    for w in range(W):
        for t in range(T):
            handles[w, t] = model.add_variable(f"{prefix},{w + 1},{t + 1}]", **kwargs)
    return handles


def representative_demand(ts: TimeSeriesTable, mapping: PeriodMapping, zone: str, w: int, t: int) -> float:
    """Demand of `zone` at step t of representative w (both 0-based): the value at the same step
    of the representative's designated period."""
    if not 0 <= w < mapping.W:
        raise StepIndexError(f"representative {w} outside 0..{mapping.W - 1}")
    if not 0 <= t < mapping.T:
        raise StepIndexError(f"step {t} outside 0..{mapping.T - 1}")
    return float(ts.demand(zone)[mapping.step_of(w, t)])


def representative_profile(ts: TimeSeriesTable, mapping: PeriodMapping, column: str) -> np.ndarray:
    """(W, T) values of a time series column over the representative periods."""
    values = ts.column(column)
    rows = np.asarray(mapping.designated)[:, None] * mapping.T + np.arange(mapping.T)[None, :]
    return values[rows]


def _add_cyclic_storage(
    model: LpModel, store: StorageConfig, handles: StorageHandles, W: int, T: int, dt: float
) -> np.ndarray:
    """Content tracked inside each representative period, returning to its start at the end."""
    soc = _grid(model, f"soc[{store.name}", W, T)
    keep = 1.0 - store.eta_sdc
    for w in range(W):
        for t in range(T):
            following = (t + 1) % T
            model.add_row(
                f"socbal[{_label(store.name, w + 1, t + 1)}]",
                Sense.EQ,
                0.0,
                [
                    (soc[w, following], 1.0),
                    (soc[w, t], -keep),
                    (handles.charge[w, t], -store.eta_cha * dt),
                    (handles.discharge[w, t], dt / store.eta_dis),
                ],
            )
            model.add_row(
                f"soccap[{_label(store.name, w + 1, t + 1)}]",
                Sense.LE,
                0.0,
                [(soc[w, t], 1.0), (handles.energy, -1.0)],
            )
    return soc


def build_base_model(
    config: SystemConfig, ts: TimeSeriesTable, mapping: PeriodMapping
) -> tuple[LpModel, CemHandles]:
    started = time.perf_counter()
    horizon = config.horizon
    if mapping.H != horizon.H or mapping.T != horizon.T:
        raise MappingMismatch(
            f"mapping covers N*T = {mapping.N}*{mapping.T} steps, config has H={horizon.H}, T={horizon.T}"
        )
    W, T, dt = mapping.W, mapping.T, horizon.dt_hours
    weight = np.asarray(mapping.weight, dtype=float)
    model = LpModel("ldslab")
    handles = CemHandles(W=W, T=T, dt=dt)

    # zone -> list of (handle grid, sign) entering its balance
    injections: dict[str, list[tuple[np.ndarray, float]]] = {z: [] for z in config.zone_names}

    for gen in config.generators:
        cap = model.add_variable(f"cap[{gen.name}]", obj=gen.capex)
        g = np.empty((W, T), dtype=int)
        for w in range(W):
            for t in range(T):
                g[w, t] = model.add_variable(
                    f"g[{_label(gen.name, w + 1, t + 1)}]", obj=weight[w] * dt * gen.varcost
                )
        if gen.kind == "vre":
            availability = representative_profile(ts, mapping, gen.availability_series)
        else:
            availability = np.ones((W, T))
        for w in range(W):
            for t in range(T):
                coeffs = [(g[w, t], 1.0)]
                if availability[w, t] != 0.0:
                    coeffs.append((cap, -float(availability[w, t])))
                model.add_row(f"gencap[{_label(gen.name, w + 1, t + 1)}]", Sense.LE, 0.0, coeffs)
        handles.generator_capacity[gen.name] = cap
        handles.generation[gen.name] = g
        injections[gen.zone].append((g, 1.0))

    for store in config.storages:
        energy = model.add_variable(f"C[{store.name}]", obj=store.capex_energy)
        power = model.add_variable(f"P[{store.name}]", obj=store.capex_power)
        charge = _grid(model, f"cha[{store.name}", W, T)
        discharge = _grid(model, f"dis[{store.name}", W, T)
        for w in range(W):
            for t in range(T):
                label = _label(store.name, w + 1, t + 1)
                model.add_row(f"chacap[{label}]", Sense.LE, 0.0, [(charge[w, t], 1.0), (power, -1.0)])
                model.add_row(f"discap[{label}]", Sense.LE, 0.0, [(discharge[w, t], 1.0), (power, -1.0)])
        storage = StorageHandles(energy, power, charge, discharge)
        if not store.is_lds:
            soc = _add_cyclic_storage(model, store, storage, W, T, dt)
            storage = StorageHandles(energy, power, charge, discharge, soc)
        handles.storages[store.name] = storage
        injections[store.zone] += [(discharge, 1.0), (charge, -1.0)]

    for line in config.lines:
        cap = model.add_variable(f"linecap[{line.name}]", obj=line.capex)
        forward = _grid(model, f"fwd[{line.name}", W, T)
        reverse = _grid(model, f"rev[{line.name}", W, T)
        for w in range(W):
            for t in range(T):
                label = _label(line.name, w + 1, t + 1)
                model.add_row(f"fwdcap[{label}]", Sense.LE, 0.0, [(forward[w, t], 1.0), (cap, -1.0)])
                model.add_row(f"revcap[{label}]", Sense.LE, 0.0, [(reverse[w, t], 1.0), (cap, -1.0)])
        handles.line_capacity[line.name] = cap
        handles.flow_forward[line.name] = forward
        handles.flow_reverse[line.name] = reverse
        injections[line.from_zone] += [(forward, -1.0), (reverse, 1.0)]
        injections[line.to_zone] += [(forward, 1.0), (reverse, -1.0)]

    for zone in config.zone_names:
        nse = np.empty((W, T), dtype=int)
        for w in range(W):
            for t in range(T):
                nse[w, t] = model.add_variable(
                    f"nse[{_label(zone, w + 1, t + 1)}]", obj=weight[w] * dt * config.nse_penalty
                )
        rows = np.empty((W, T), dtype=int)
        for w in range(W):
            for t in range(T):
                coeffs = [(grid[w, t], sign) for grid, sign in injections[zone]]
                coeffs.append((nse[w, t], 1.0))
                rows[w, t] = model.add_row(
                    f"balance[{_label(zone, w + 1, t + 1)}]",
                    Sense.EQ,
                    representative_demand(ts, mapping, zone, w, t),
                    coeffs,
                )
        handles.nse[zone] = nse
        handles.balance_rows[zone] = rows

    logger.info(
        "Built base model over %d representatives x %d steps: %d rows, %d variables in %.3f s",
        W,
        T,
        model.num_rows,
        model.num_vars,
        time.perf_counter() - started,
    )
    return model, handles
