from kedro.pipeline import Pipeline
from .pipelines.aggregation import pipeline as aggregation_pipeline
from .pipelines.comparison import pipeline as comparison_pipeline
from .pipelines.config import load_formulations_config


def register_pipelines() -> dict[str, Pipeline]:
    # Load the formulations configured for comparison
    formulations = load_formulations_config()

    pipelines = {}

    pipelines["aggregation"] = aggregation_pipeline.create_pipeline()
    pipelines["compare"] = pipelines["aggregation"] + comparison_pipeline.create_pipeline()

    # One solve pipeline per formulation, each including aggregation
    for formulation in formulations:
        key = formulation.replace("-", "_")
        pipelines[f"solve_{key}"] = pipelines["aggregation"] + comparison_pipeline.create_solve_pipeline(
            formulation
        )

    pipelines["__default__"] = pipelines["compare"]
    return pipelines
