import pytest

from kedro_ldslab.analysis import count_rows_closed_form, count_variables_closed_form
from kedro_ldslab.cem import build_base_model
from kedro_ldslab.formulations import ALL_FORMULATIONS, Formulation, apply_formulation
from kedro_ldslab.lp import model_stats
from tests.helpers import constant_series, cyclic_mapping, make_config

GRID = [(4, 2, 1), (4, 4, 2), (4, 6, 4), (6, 2, 3), (6, 4, 1), (6, 6, 2), (8, 2, 2), (8, 4, 4), (8, 6, 8)]


def _deltas(formulation, N, T, W):
    config = make_config(H=N * T, T=T, k=W)
    mapping = cyclic_mapping(N, T, W)
    model, handles = build_base_model(config, constant_series(N * T), mapping)
    base = model_stats(model)
    apply_formulation(formulation, model, handles, mapping, config.lds_storages)
    stats = model_stats(model)
    return stats.num_rows - base.num_rows, stats.num_vars - base.num_vars


@pytest.mark.parametrize("N, T, W", GRID)
@pytest.mark.parametrize("formulation", ALL_FORMULATIONS, ids=lambda f: f.value)
def test_row_and_variable_deltas_match_closed_forms(formulation, N, T, W):
    rows, variables = _deltas(formulation, N, T, W)
    assert rows == count_rows_closed_form(formulation, N, T, W)
    assert variables == count_variables_closed_form(formulation, N, T, W)


@pytest.mark.parametrize("N, T, W", [(8, 4, 2), (12, 4, 3), (16, 6, 4), (24, 4, 2)])
def test_minmax_has_the_fewest_rows_of_the_exact_formulations(N, T, W):
    minmax = _deltas(Formulation.IMPLICIT_MINMAX, N, T, W)[0]
    assert minmax < _deltas(Formulation.IMPLICIT_HOURLY, N, T, W)[0]
    assert minmax < _deltas(Formulation.EXPLICIT_HOURLY, N, T, W)[0]


def test_rows_scale_with_every_storage():
    storage = {
        "zone": "Z1",
        "is_lds": True,
        "capex_energy": 1.0,
        "capex_power": 1.0,
        "eta_cha": 1.0,
        "eta_dis": 1.0,
    }
    config = make_config(H=16, T=4, storages=[{"name": "a", **storage}, {"name": "b", **storage}])
    mapping = cyclic_mapping(4, 4, 2)
    model, handles = build_base_model(config, constant_series(16), mapping)
    before = model.num_rows
    apply_formulation(Formulation.IMPLICIT_MINMAX, model, handles, mapping, config.lds_storages)
    assert model.num_rows - before == 2 * count_rows_closed_form(Formulation.IMPLICIT_MINMAX, 4, 4, 2)
