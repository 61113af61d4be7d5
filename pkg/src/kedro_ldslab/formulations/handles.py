import enum
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from ..cem.model import CemHandles, StorageHandles
from ..datasets.system_config import StorageConfig
from ..errors import HandleMismatch, NotLds


class Formulation(str, enum.Enum):
    EXPLICIT_HOURLY = "explicit-hourly"
    IMPLICIT_HOURLY = "implicit-hourly"
    IMPLICIT_MINMAX = "implicit-minmax"
    ORIGINAL = "original"

    @classmethod
    def parse_many(cls, values: "str | Iterable[str]") -> list["Formulation"]:
        """Parse formulation names; `all` expands to every formulation in declaration order."""
        if isinstance(values, str):
            values = [values]
        parsed: list[Formulation] = []
        for value in values:
            expanded = list(cls) if value == "all" else [cls(value)]
            parsed += [f for f in expanded if f not in parsed]
        return parsed


ALL_FORMULATIONS = tuple(Formulation)


@dataclass(frozen=True, eq=False)
class StorageSocHandles:
    """State-of-charge variables added for one long-duration storage. Unused fields stay None."""

    soc: np.ndarray | None = None  # (H,)
    soc_intra: np.ndarray | None = None  # (W, T)
    soc_inter: np.ndarray | None = None  # (N,)
    delta: np.ndarray | None = None  # (W,)
    delta_max_pos: np.ndarray | None = None  # (W,)
    delta_max_neg: np.ndarray | None = None  # (W,)


@dataclass(frozen=True, eq=False)
class LdsHandles:
    formulation: Formulation
    storages: dict[str, StorageSocHandles] = field(default_factory=dict)


def lds_storages(cem_handles: CemHandles, storage_params: Iterable[StorageConfig]) -> list[tuple[StorageConfig, StorageHandles]]:
    """Pair every storage with its base-model handles, refusing storages without the LDS flag."""
    pairs = []
    for store in storage_params:
        if not store.is_lds:
            raise NotLds(f"storage '{store.name}' is not marked is_lds")
        if store.name not in cem_handles.storages:
            raise HandleMismatch(f"storage '{store.name}' is not part of the base model")
        pairs.append((store, cem_handles.storages[store.name]))
    return pairs


def inflow(store: StorageConfig, handles: StorageHandles, w: int, t: int, dt: float, sign: float = 1.0):
    """Net energy added during step t of representative w, as coefficients times `sign`."""
    return [
        (handles.charge[w, t], sign * store.eta_cha * dt),
        (handles.discharge[w, t], -sign * dt / store.eta_dis),
    ]


def label(*parts) -> str:
    return ",".join(str(p) for p in parts)
