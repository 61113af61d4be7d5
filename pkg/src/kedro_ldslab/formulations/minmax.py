"""Formulations that bound the content only inside representative periods and at the start of
each input period.

`soc_intra[w, t]` is the content at the end of step t of representative w, anchored to the
designated period n(w) of the representative. `delta[w]` is the net change over a representative
period, which carries the inter-period content from one input period to the next.
"""

import numpy as np

from ..errors import MissingDesignated
from ..lp.model import INF, Sense
from .handles import Formulation, LdsHandles, StorageSocHandles, inflow, label, lds_storages
from .registry import FormulationRegistry


def _apply_representative_layers(model, cem_handles, mapping, storage_params, formulation, with_extremes):
    N, T, W, dt = mapping.N, mapping.T, mapping.W, cem_handles.dt
    if len(mapping.designated) != W or any(not 0 <= n < N for n in mapping.designated):
        raise MissingDesignated("mapping lacks a designated period for every representative")

    result = LdsHandles(formulation)
    for store, flows in lds_storages(cem_handles, storage_params):
        name = store.name
        keep = 1.0 - store.eta_sdc
        intra = np.empty((W, T), dtype=int)
        for w in range(W):
            for t in range(T):
                intra[w, t] = model.add_variable(f"soc_intra[{label(name, w + 1, t + 1)}]")
        inter_lb = -INF if with_extremes else 0.0
        inter = np.array(
            [model.add_variable(f"soc_inter[{label(name, n + 1)}]", lb=inter_lb) for n in range(N)]
        )
        delta = np.array(
            [model.add_variable(f"dsoc[{label(name, w + 1)}]", lb=-INF) for w in range(W)]
        )
        if with_extremes:
            max_pos = np.array([model.add_variable(f"dsoc_pos[{label(name, w + 1)}]") for w in range(W)])
            max_neg = np.array(
                [model.add_variable(f"dsoc_neg[{label(name, w + 1)}]", lb=-INF, ub=0.0) for w in range(W)]
            )

        for w in range(W):
            for t in range(1, T):
                model.add_row(
                    f"intrabal[{label(name, w + 1, t + 1)}]",
                    Sense.EQ,
                    0.0,
                    [(intra[w, t], 1.0), (intra[w, t - 1], -keep)] + inflow(store, flows, w, t, dt, sign=-1.0),
                )
        for w in range(W):
            for t in range(T):
                model.add_row(
                    f"intracap[{label(name, w + 1, t + 1)}]",
                    Sense.LE,
                    0.0,
                    [(intra[w, t], 1.0), (flows.energy, -1.0)],
                )
        for n in range(N):
            model.add_row(
                f"interbal[{label(name, n + 1)}]",
                Sense.EQ,
                0.0,
                [(inter[(n + 1) % N], 1.0), (inter[n], -1.0), (delta[mapping.rep_of[n]], -1.0)],
            )
        for w, n in enumerate(mapping.designated):
            model.add_row(
                f"netchange[{label(name, w + 1)}]",
                Sense.EQ,
                0.0,
                [(inter[n], 1.0), (intra[w, T - 1], -1.0), (delta[w], 1.0)],
            )
            model.add_row(
                f"intrastart[{label(name, w + 1)}]",
                Sense.EQ,
                0.0,
                [(intra[w, 0], 1.0), (inter[n], -keep)] + inflow(store, flows, w, 0, dt, sign=-1.0),
            )

        if not with_extremes:
            for n in range(N):
                model.add_row(
                    f"intercap[{label(name, n + 1)}]",
                    Sense.LE,
                    0.0,
                    [(inter[n], 1.0), (flows.energy, -1.0)],
                )
            result.storages[name] = StorageSocHandles(soc_intra=intra, soc_inter=inter, delta=delta)
            continue

        for w in range(W):
            for t in range(1, T):
                model.add_row(
                    f"maxpos[{label(name, w + 1, t + 1)}]",
                    Sense.GE,
                    0.0,
                    [(max_pos[w], 1.0), (intra[w, t], -1.0), (intra[w, 0], 1.0)],
                )
                model.add_row(
                    f"maxneg[{label(name, w + 1, t + 1)}]",
                    Sense.LE,
                    0.0,
                    [(max_neg[w], 1.0), (intra[w, t], -1.0), (intra[w, 0], 1.0)],
                )
        # content after the first step of every input period, pushed to its extremes
        for n in range(N):
            w = mapping.rep_of[n]
            first_step = [(inter[n], keep)] + inflow(store, flows, w, 0, dt)
            model.add_row(
                f"socmax[{label(name, n + 1)}]",
                Sense.LE,
                0.0,
                first_step + [(max_pos[w], 1.0), (flows.energy, -1.0)],
            )
            model.add_row(
                f"socmin[{label(name, n + 1)}]",
                Sense.GE,
                0.0,
                first_step + [(max_neg[w], 1.0)],
            )
        result.storages[name] = StorageSocHandles(
            soc_intra=intra,
            soc_inter=inter,
            delta=delta,
            delta_max_pos=max_pos,
            delta_max_neg=max_neg,
        )
    return result


@FormulationRegistry.register(Formulation.IMPLICIT_MINMAX)
def apply_implicit_minmax(model, cem_handles, mapping, storage_params) -> LdsHandles:
    """
    Bound the content of non-representative periods through the largest rise and fall seen
    inside their representative, measured from its first step.

    Adds 3 rows per input period instead of one pair per step.
    """
    return _apply_representative_layers(
        model, cem_handles, mapping, storage_params, Formulation.IMPLICIT_MINMAX, with_extremes=True
    )


@FormulationRegistry.register(Formulation.ORIGINAL)
def apply_original_relaxed(model, cem_handles, mapping, storage_params) -> LdsHandles:
    """Bound only the inter-period content to [0, C]. Content inside non-representative periods
    may leave its limits."""
    return _apply_representative_layers(
        model, cem_handles, mapping, storage_params, Formulation.ORIGINAL, with_extremes=False
    )
