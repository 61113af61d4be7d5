from kedro.pipeline import Pipeline, node
from .nodes import make_period_features, make_period_mapping, prepare_timeseries


def create_pipeline(**kwargs) -> Pipeline:
    """
    Create the aggregation pipeline.

    This pipeline reads the system description and time series, and:
    1. Checks the time series against the system description
    2. Builds one normalized feature row per input period
    3. Clusters the periods and picks the medoid of each cluster as its representative
    4. Saves the period mapping

    Returns:
        Pipeline: A Kedro pipeline producing `period_mapping`
    """
    return Pipeline(
        [
            node(
                func=prepare_timeseries,
                inputs=["raw_timeseries", "system_config"],
                outputs="timeseries",
                name="prepare_timeseries",
            ),
            node(
                func=make_period_features,
                inputs=["timeseries", "system_config"],
                outputs="period_features",
                name="make_period_features",
            ),
            node(
                func=make_period_mapping,
                inputs=["period_features", "system_config", "params:full_resolution"],
                outputs="period_mapping",
                name="make_period_mapping",
            ),
        ]
    )
