from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .soc import SocTrajectory

DEFAULT_TOLERANCE = 1e-6


@dataclass(frozen=True)
class ViolationReport:
    """Steps of one storage whose content leaves [0, C]. Steps are 1-based; the wrap value is not
    audited."""

    storage: str
    capacity: float
    tolerance: float
    over_steps: tuple[int, ...] = ()
    under_steps: tuple[int, ...] = ()
    max_over: float = 0.0
    max_under: float = 0.0

    @property
    def count_over(self) -> int:
        return len(self.over_steps)

    @property
    def count_under(self) -> int:
        return len(self.under_steps)

    @property
    def total(self) -> int:
        return self.count_over + self.count_under


def count_violations(
    traj: SocTrajectory, C_star: float | None = None, tol_rel: float = DEFAULT_TOLERANCE
) -> ViolationReport:
    capacity = traj.capacity if C_star is None else float(C_star)
    tolerance = tol_rel * max(1.0, capacity)
    states = np.asarray(traj.states, dtype=float)
    over = states - capacity
    under = -states
    over_mask = over > tolerance
    under_mask = under > tolerance
    return ViolationReport(
        storage=traj.storage,
        capacity=capacity,
        tolerance=tolerance,
        over_steps=tuple(int(h) + 1 for h in np.flatnonzero(over_mask)),
        under_steps=tuple(int(h) + 1 for h in np.flatnonzero(under_mask)),
        max_over=float(over[over_mask].max(initial=0.0)),
        max_under=float(under[under_mask].max(initial=0.0)),
    )


def total_violations(reports: Sequence[ViolationReport]) -> int:
    return sum(r.total for r in reports)


def average_violations(reports: Sequence[ViolationReport]) -> float:
    """Violations per long-duration storage."""
    return total_violations(reports) / len(reports) if reports else 0.0
