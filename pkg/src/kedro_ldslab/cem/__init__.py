from .model import CemHandles, StorageHandles, build_base_model, representative_demand, representative_profile

__all__ = [
    "CemHandles",
    "StorageHandles",
    "build_base_model",
    "representative_demand",
    "representative_profile",
]
