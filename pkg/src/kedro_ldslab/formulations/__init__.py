"""Long-duration storage formulations applied on top of the base model."""

# Import the appliers so they are registered
from . import hourly, minmax  # noqa: F401
from .handles import ALL_FORMULATIONS, Formulation, LdsHandles, StorageSocHandles
from .hourly import apply_explicit_hourly, apply_implicit_hourly
from .minmax import apply_implicit_minmax, apply_original_relaxed
from .registry import FormulationRegistry, apply_formulation

__all__ = [
    "ALL_FORMULATIONS",
    "Formulation",
    "FormulationRegistry",
    "LdsHandles",
    "StorageSocHandles",
    "apply_explicit_hourly",
    "apply_formulation",
    "apply_implicit_hourly",
    "apply_implicit_minmax",
    "apply_original_relaxed",
]
