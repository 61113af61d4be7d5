import pytest

from kedro_ldslab.pipeline_registry import register_pipelines
from kedro_ldslab.pipelines.aggregation import pipeline as aggregation_pipeline
from kedro_ldslab.pipelines.comparison import pipeline as comparison_pipeline
from kedro_ldslab.pipelines.config import load_formulations_config, load_run_parameters, resolve_formulations
from tests.helpers import ROOT

ALL = ["explicit-hourly", "implicit-hourly", "implicit-minmax", "original"]


def test_resolver_expands_all():
    assert resolve_formulations() == ALL
    assert resolve_formulations("all") == ALL


def test_resolver_keeps_a_selection_in_order():
    assert resolve_formulations("original", " implicit-minmax") == ["original", "implicit-minmax"]


def test_resolver_rejects_unknown_names():
    with pytest.raises(ValueError):
        resolve_formulations("hourly")


def test_run_parameters():
    params = load_run_parameters(str(ROOT / "conf"))
    assert params["comparison"]["formulations"] == ALL
    assert params["full_resolution"] is False
    assert load_formulations_config(str(ROOT / "conf")) == ALL


def test_aggregation_pipeline_outputs():
    pipeline = aggregation_pipeline.create_pipeline()
    assert pipeline.outputs() == {"period_mapping"}
    assert {"raw_timeseries", "system_config", "params:full_resolution"} <= pipeline.inputs()


def test_solve_pipeline_dataset_names():
    pipeline = comparison_pipeline.create_solve_pipeline("implicit-minmax")
    assert pipeline.outputs() == {
        "implicit_minmax__model",
        "implicit_minmax__soc_trajectories",
        "implicit_minmax__violations",
    }


def test_registered_pipelines(monkeypatch):
    monkeypatch.chdir(ROOT)
    pipelines = register_pipelines()
    assert {"aggregation", "compare", "__default__"} <= set(pipelines)
    assert {f"solve_{name.replace('-', '_')}" for name in ALL} <= set(pipelines)
    assert pipelines["__default__"].outputs() == {"comparison_report"}
