"""Rebuild the state of charge over the full horizon from a solved model.

Each formulation is read back with the rule its own rows enforce:

- explicit-hourly: the content variables themselves (beginning of each step);
- implicit-hourly: `soc_inter[n] * (1 - sdc)^t + soc_intra[w(n), t]` with 1-based t (beginning of
  each step);
- implicit-minmax and original: a step-by-step recursion from `soc_inter[n]` through the flows of
  the representative (end of each step).

The trajectory holds H values plus the value the cycle wraps to after the last step.
"""

from dataclasses import dataclass

import numpy as np

from ..cem.model import CemHandles, StorageHandles
from ..datasets.period_mapping import PeriodMapping
from ..datasets.system_config import StorageConfig
from ..errors import HandleMismatch, StatusError
from ..formulations.handles import Formulation, LdsHandles, StorageSocHandles
from ..lp.model import Solution, SolveStatus


@dataclass(frozen=True, eq=False)
class SocTrajectory:
    storage: str
    # H + 1 values, the last is the wrap value
    values: np.ndarray
    capacity: float

    @property
    def H(self) -> int:
        return len(self.values) - 1

    @property
    def states(self) -> np.ndarray:
        return self.values[:-1]

    @property
    def wrap(self) -> float:
        return float(self.values[-1])

    @property
    def cycle_gap(self) -> float:
        """Difference between the wrap value and the content at the first step."""
        return abs(self.wrap - float(self.values[0]))


def _net_inflow(solution: Solution, store: StorageConfig, flows: StorageHandles, dt: float) -> np.ndarray:
    charge = solution.take(flows.charge)
    discharge = solution.take(flows.discharge)
    return (charge * store.eta_cha - discharge / store.eta_dis) * dt


def _require(handles: StorageSocHandles, *names: str) -> list[np.ndarray]:
    missing = [n for n in names if getattr(handles, n) is None]
    if missing:
        raise HandleMismatch(f"handles lack {', '.join(missing)}")
    return [getattr(handles, n) for n in names]


def reconstruct_soc(
    solution: Solution,
    lds_handles: LdsHandles,
    cem_handles: CemHandles,
    mapping: PeriodMapping,
    storage_params: StorageConfig,
) -> SocTrajectory:
    if solution.status is not SolveStatus.OPTIMAL or not solution.has_values:
        raise StatusError(f"cannot reconstruct from a solution with status '{solution.status.value}'")
    store = storage_params
    if store.name not in lds_handles.storages or store.name not in cem_handles.storages:
        raise HandleMismatch(f"no state-of-charge handles for storage '{store.name}'")
    handles = lds_handles.storages[store.name]
    flows = cem_handles.storages[store.name]
    capacity = solution.value(flows.energy)
    N, T, H = mapping.N, mapping.T, mapping.H
    keep = 1.0 - store.eta_sdc
    rep_of = np.asarray(mapping.rep_of)
    inflow = _net_inflow(solution, store, flows, cem_handles.dt)

    formulation = lds_handles.formulation
    if formulation is Formulation.EXPLICIT_HOURLY:
        (soc,) = _require(handles, "soc")
        states = solution.take(soc)
        if len(states) != H:
            raise HandleMismatch(f"{len(states)} content variables for a horizon of {H} steps")
        values = np.append(states, states[0])

    elif formulation is Formulation.IMPLICIT_HOURLY:
        intra, inter = (solution.take(h) for h in _require(handles, "soc_intra", "soc_inter"))
        decay = keep ** np.arange(1, T + 1)
        states = (inter[:, None] * decay[None, :] + intra[rep_of]).reshape(H)
        last = rep_of[N - 1]
        following = inter[N - 1] + keep * intra[last, T - 1] + inflow[last, T - 1]
        values = np.append(states, following * keep)

    elif formulation in (Formulation.IMPLICIT_MINMAX, Formulation.ORIGINAL):
        (inter,) = (solution.take(h) for h in _require(handles, "soc_inter"))
        states = np.empty(H)
        for n in range(N):
            w = rep_of[n]
            content = inter[n]
            for t in range(T):
                content = keep * content + inflow[w, t]
                states[n * T + t] = content
        values = np.append(states, keep * states[-1] + inflow[rep_of[0], 0])

    else:
        raise HandleMismatch(f"unknown formulation {formulation!r}")

    return SocTrajectory(storage=store.name, values=values, capacity=capacity)


def reconstruct_all(solution, lds_handles, cem_handles, mapping, storage_params) -> list[SocTrajectory]:
    return [reconstruct_soc(solution, lds_handles, cem_handles, mapping, s) for s in storage_params]
