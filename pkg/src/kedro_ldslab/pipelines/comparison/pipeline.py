from kedro.pipeline import Pipeline, node
from .nodes import compare_node, formulation_model, soc_trajectories, solve_node, violation_table


def create_pipeline(**kwargs) -> Pipeline:
    """
    Create the comparison pipeline: every formulation listed in `comparison.formulations` is
    applied to its own copy of the base model, solved and audited.

    Returns:
        Pipeline: A Kedro pipeline producing `comparison_report`
    """
    return Pipeline(
        [
            node(
                func=compare_node,
                inputs=[
                    "system_config",
                    "timeseries",
                    "period_mapping",
                    "params:comparison",
                    "params:solver",
                ],
                outputs="comparison_report",
                name="compare_formulations",
            )
        ]
    )


def create_solve_pipeline(formulation: str) -> Pipeline:
    """
    Create a pipeline solving a single formulation.

    Args:
        formulation: The formulation name, e.g. "implicit-minmax"

    Returns:
        Pipeline: A Kedro pipeline producing the model, trajectories and violations of
        `<formulation>__*` datasets
    """
    key = formulation.replace("-", "_")

    def solve_wrapper(config, ts, mapping, solver_params, tolerance):
        return solve_node(config, ts, mapping, formulation, solver_params, tolerance)

    return Pipeline(
        [
            node(
                func=solve_wrapper,
                inputs=[
                    "system_config",
                    "timeseries",
                    "period_mapping",
                    "params:solver",
                    "params:comparison.tolerance",
                ],
                outputs=f"{key}__run",
                name=f"solve_{key}",
            ),
            node(
                func=formulation_model,
                inputs=f"{key}__run",
                outputs=f"{key}__model",
                name=f"export_{key}_model",
            ),
            node(
                func=soc_trajectories,
                inputs=f"{key}__run",
                outputs=f"{key}__soc_trajectories",
                name=f"reconstruct_{key}_soc",
            ),
            node(
                func=violation_table,
                inputs=f"{key}__run",
                outputs=f"{key}__violations",
                name=f"audit_{key}_violations",
            ),
        ]
    )
