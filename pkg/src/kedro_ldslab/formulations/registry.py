import logging

from ..registry import Registry

logger = logging.getLogger(__name__)


class FormulationRegistry(Registry):
    """
    Formulation name -> applier. `get(name, model=..., cem_handles=..., mapping=...,
    storage_params=...)` applies the formulation and returns its `LdsHandles`.
    """

    kind = "formulation"


def apply_formulation(formulation, model, cem_handles, mapping, storage_params):
    rows_before = model.num_rows
    handles = FormulationRegistry.get(
        formulation,
        model=model,
        cem_handles=cem_handles,
        mapping=mapping,
        storage_params=storage_params,
    )
    logger.info(
        "Applied %s to %d storages: %d rows added",
        handles.formulation.value,
        len(handles.storages),
        model.num_rows - rows_before,
    )
    return handles
