"""Instance builders and LP checks shared by the test modules."""

import sys
from pathlib import Path

import numpy as np
from scipy.optimize import linprog

from kedro_ldslab.datasets import PeriodMapping, TimeSeriesTable, load_config, load_timeseries, parse_config
from kedro_ldslab.lp import LpModel, Sense
from kedro_ldslab.pipelines.aggregation.nodes import make_period_features, make_period_mapping

ROOT = Path(__file__).resolve().parents[1]
RAW = ROOT / "data" / "01_raw"
MOCK_SOLVER = Path(__file__).resolve().parent / "fixtures" / "mock_solver.py"


def solver_command(mode, *extra):
    """Command template running the mock solver in `mode` with this interpreter."""
    parts = [f'"{sys.executable}"', f'"{MOCK_SOLVER}"', mode, *[f'"{e}"' for e in extra], "{mps}", "{sol}"]
    return " ".join(parts)


def load_instance(config_path, ts_path):
    config = load_config(config_path)
    ts = load_timeseries(ts_path, config)
    mapping = make_period_mapping(make_period_features(ts, config), config)
    return config, ts, mapping


def system_document(
    H=8,
    T=4,
    k=2,
    zones=("Z1",),
    generators=None,
    storages=None,
    lines=(),
    nse_penalty=10.0,
    seed=1,
):
    """Plain config document, the dict the TOML loader would produce."""
    if generators is None:
        generators = [
            {"name": "thermal", "zone": zones[0], "kind": "thermal", "capex": 10.0, "varcost": 1.0}
        ]
    if storages is None:
        storages = [
            {
                "name": "lds",
                "zone": zones[0],
                "is_lds": True,
                "capex_energy": 0.5,
                "capex_power": 1.0,
                "eta_cha": 0.9,
                "eta_dis": 0.9,
                "eta_sdc": 0.0,
            }
        ]
    return {
        "nse_penalty": nse_penalty,
        "horizon": {"H": H, "T": T, "dt_hours": 1.0},
        "aggregation": {"num_representatives": k, "seed": seed},
        "zone": [{"name": z} for z in zones],
        "generator": list(generators),
        "storage": list(storages),
        "line": list(lines),
    }


def make_config(**kwargs):
    return parse_config(system_document(**kwargs))


def constant_series(H, zones=("Z1",), demand=0.0, **columns):
    data = {f"demand.{z}": np.full(H, float(demand)) for z in zones}
    data.update(columns)
    return TimeSeriesTable.from_columns(data)


def cyclic_mapping(N, T, W):
    """Periods assigned round-robin; the first W periods are the designated ones."""
    rep_of = [n % W for n in range(N)]
    return PeriodMapping(
        N=N, T=T, rep_of=rep_of, designated=range(W), weight=np.bincount(rep_of, minlength=W)
    )


def random_instance(seed):
    """Small 1- or 2-zone system with one LDS storage per zone and a daily solar shape."""
    rng = np.random.default_rng(seed)
    num_zones = int(rng.integers(1, 3))
    N = int(rng.choice([4, 8]))
    T = int(rng.choice([4, 6]))
    H = N * T
    zones = tuple(f"Z{i + 1}" for i in range(num_zones))
    generators, storages, columns = [], [], {}
    shape = np.sin(np.linspace(0.0, np.pi, T)) ** 2
    for z in zones:
        generators += [
            {
                "name": f"thermal_{z}",
                "zone": z,
                "kind": "thermal",
                "capex": float(rng.uniform(5, 15)),
                "varcost": float(rng.uniform(0.5, 3)),
            },
            {
                "name": f"solar_{z}",
                "zone": z,
                "kind": "vre",
                "capex": float(rng.uniform(2, 8)),
                "varcost": 0.0,
                "availability_series": f"avail.solar_{z}",
            },
        ]
        storages.append(
            {
                "name": f"lds_{z}",
                "zone": z,
                "is_lds": True,
                "capex_energy": float(rng.uniform(0.1, 1.0)),
                "capex_power": float(rng.uniform(0.5, 2.0)),
                "eta_cha": float(rng.uniform(0.8, 1.0)),
                "eta_dis": float(rng.uniform(0.8, 1.0)),
                "eta_sdc": 0.0,
            }
        )
        season = rng.uniform(0.2, 1.0, size=N)
        columns[f"demand.{z}"] = rng.uniform(5, 15, size=H).round(3)
        columns[f"avail.solar_{z}"] = np.clip(np.repeat(season, T) * np.tile(shape, N), 0, 1).round(3)
    lines = [{"from": zones[0], "to": zones[1], "capex": 1.0}] if num_zones == 2 else []
    config = make_config(
        H=H,
        T=T,
        k=2,
        zones=zones,
        generators=generators,
        storages=storages,
        lines=lines,
        nse_penalty=float(rng.uniform(20, 50)),
        seed=seed,
    )
    ts = TimeSeriesTable.from_columns(columns)
    mapping = make_period_mapping(make_period_features(ts, config), config)
    return config, ts, mapping


def linprog_objective(model: LpModel) -> float:
    """Optimal objective of `model` according to scipy's HiGHS interface."""
    A = model.constraint_matrix()
    b = model.rhs_vector()
    senses = np.array([s.value for s in model.senses()])
    le, ge, eq = senses == Sense.LE.value, senses == Sense.GE.value, senses == Sense.EQ.value
    A_ub = np.vstack([A[le].toarray(), -A[ge].toarray()])
    b_ub = np.concatenate([b[le], -b[ge]])
    lb, ub = model.bounds()
    bounds = [(None if np.isinf(lo) else lo, None if np.isinf(hi) else hi) for lo, hi in zip(lb, ub)]
    result = linprog(
        model.objective_vector(),
        A_ub=A_ub if len(b_ub) else None,
        b_ub=b_ub if len(b_ub) else None,
        A_eq=A[eq].toarray() if eq.any() else None,
        b_eq=b[eq] if eq.any() else None,
        bounds=bounds,
        method="highs",
    )
    assert result.status == 0, result.message
    return float(result.fun)


def assert_feasible(model: LpModel, x, tol=1e-7):
    activity = model.row_activity(x)
    for row, value in zip(model.rows, activity):
        slack = tol * (1 + abs(row.rhs))
        if row.sense is Sense.LE:
            assert value <= row.rhs + slack, row.name
        elif row.sense is Sense.GE:
            assert value >= row.rhs - slack, row.name
        else:
            assert abs(value - row.rhs) <= slack, row.name
    lb, ub = model.bounds()
    assert np.all(x >= lb - 1e-9) and np.all(x <= ub + 1e-9)


