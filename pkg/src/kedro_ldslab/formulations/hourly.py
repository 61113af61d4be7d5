"""Formulations that bound the state of charge at every step of the horizon.

Both track the content at the beginning of each step.
"""

import numpy as np

from ..lp.model import INF, Sense
from .handles import Formulation, LdsHandles, StorageSocHandles, inflow, label, lds_storages
from .registry import FormulationRegistry


@FormulationRegistry.register(Formulation.EXPLICIT_HOURLY)
def apply_explicit_hourly(model, cem_handles, mapping, storage_params) -> LdsHandles:
    """One content variable per step of the horizon, chained cyclically through the flows of the
    representative standing in for each period."""
    N, T, H, dt = mapping.N, mapping.T, mapping.H, cem_handles.dt
    result = LdsHandles(Formulation.EXPLICIT_HOURLY)
    for store, flows in lds_storages(cem_handles, storage_params):
        keep = 1.0 - store.eta_sdc
        soc = np.array([model.add_variable(f"soc[{label(store.name, h + 1)}]") for h in range(H)])
        for n in range(N):
            w = mapping.rep_of[n]
            for t in range(T):
                h = n * T + t
                model.add_row(
                    f"socbal[{label(store.name, h + 1)}]",
                    Sense.EQ,
                    0.0,
                    [(soc[(h + 1) % H], 1.0), (soc[h], -keep)] + inflow(store, flows, w, t, dt, sign=-1.0),
                )
        for h in range(H):
            model.add_row(
                f"soccap[{label(store.name, h + 1)}]",
                Sense.LE,
                0.0,
                [(soc[h], 1.0), (flows.energy, -1.0)],
            )
        result.storages[store.name] = StorageSocHandles(soc=soc)
    return result


@FormulationRegistry.register(Formulation.IMPLICIT_HOURLY)
def apply_implicit_hourly(model, cem_handles, mapping, storage_params) -> LdsHandles:
    """
    Intra-period deviations per representative plus one inter-period content per input period.

    `soc_intra[w, t]` is the change since the start of the period, before step t; it is fixed to
    zero at t = 0. The content at step t of period n is the superposition
    `soc_inter[n] * (1 - sdc)^(t+1) + soc_intra[w(n), t]`, bounded to [0, C] at every step.
    """
    N, T, W, dt = mapping.N, mapping.T, mapping.W, cem_handles.dt
    result = LdsHandles(Formulation.IMPLICIT_HOURLY)
    for store, flows in lds_storages(cem_handles, storage_params):
        name = store.name
        keep = 1.0 - store.eta_sdc
        intra = np.empty((W, T), dtype=int)
        for w in range(W):
            for t in range(T):
                lb, ub = (0.0, 0.0) if t == 0 else (-INF, INF)
                intra[w, t] = model.add_variable(f"soc_intra[{label(name, w + 1, t + 1)}]", lb=lb, ub=ub)
        inter = np.array(
            [model.add_variable(f"soc_inter[{label(name, n + 1)}]", lb=-INF) for n in range(N)]
        )

        for w in range(W):
            for t in range(1, T):
                model.add_row(
                    f"intrabal[{label(name, w + 1, t + 1)}]",
                    Sense.EQ,
                    0.0,
                    [(intra[w, t], 1.0), (intra[w, t - 1], -keep)]
                    + inflow(store, flows, w, t - 1, dt, sign=-1.0),
                )
        # the last period closes the cycle onto the first
        for n in range(N):
            w = mapping.rep_of[n]
            model.add_row(
                f"interbal[{label(name, n + 1)}]",
                Sense.EQ,
                0.0,
                [(inter[(n + 1) % N], 1.0), (inter[n], -1.0), (intra[w, T - 1], -keep)]
                + inflow(store, flows, w, T - 1, dt, sign=-1.0),
            )
        for n in range(N):
            w = mapping.rep_of[n]
            for t in range(T):
                decay = keep ** (t + 1)
                model.add_row(
                    f"socmax[{label(name, n + 1, t + 1)}]",
                    Sense.LE,
                    0.0,
                    [(inter[n], decay), (intra[w, t], 1.0), (flows.energy, -1.0)],
                )
                model.add_row(
                    f"socmin[{label(name, n + 1, t + 1)}]",
                    Sense.GE,
                    0.0,
                    [(inter[n], decay), (intra[w, t], 1.0)],
                )
        result.storages[name] = StorageSocHandles(soc_intra=intra, soc_inter=inter)
    return result
