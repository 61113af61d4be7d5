import math

import pytest

from kedro_ldslab.cem import build_base_model
from kedro_ldslab.datasets import parse_config
from kedro_ldslab.errors import SizeLimit
from kedro_ldslab.formulations import ALL_FORMULATIONS, Formulation, apply_formulation
from kedro_ldslab.lp import LpModel, ReferenceOptions, Sense, SolveStatus, solve_reference
from tests.helpers import assert_feasible, linprog_objective


def _textbook():
    # max 3x + 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18
    model = LpModel("textbook")
    x = model.add_variable("x", obj=-3)
    y = model.add_variable("y", obj=-5)
    model.add_row("c1", Sense.LE, 4, [(x, 1)])
    model.add_row("c2", Sense.LE, 12, [(y, 2)])
    model.add_row("c3", Sense.LE, 18, [(x, 3), (y, 2)])
    return model


def test_textbook_vertex():
    solution = solve_reference(_textbook())
    assert solution.status is SolveStatus.OPTIMAL
    assert solution.objective == pytest.approx(-36, abs=1e-9)
    assert solution.value(0) == pytest.approx(2, abs=1e-9)
    assert solution.value(1) == pytest.approx(6, abs=1e-9)


def test_single_upper_bound_row():
    model = LpModel()
    x = model.add_variable("x", obj=-1)
    model.add_row("cap", Sense.LE, 3, [(x, 1)])
    solution = solve_reference(model)
    assert solution.status is SolveStatus.OPTIMAL
    assert solution.value(x) == pytest.approx(3)
    assert solution.objective == pytest.approx(-3)


def test_infeasible():
    model = LpModel()
    x = model.add_variable("x")
    model.add_row("lo", Sense.GE, 1, [(x, 1)])
    model.add_row("hi", Sense.LE, 0, [(x, 1)])
    assert solve_reference(model).status is SolveStatus.INFEASIBLE


def test_unbounded():
    model = LpModel()
    model.add_variable("x", obj=-1)
    assert solve_reference(model).status is SolveStatus.UNBOUNDED


def test_free_and_negative_variables():
    # min x - y  s.t.  x >= -5, y <= -1 (as a bound), x + y >= -10
    model = LpModel()
    x = model.add_variable("x", lb=-math.inf, obj=1)
    y = model.add_variable("y", lb=-math.inf, ub=-1, obj=-1)
    model.add_row("xlo", Sense.GE, -5, [(x, 1)])
    model.add_row("sum", Sense.GE, -10, [(x, 1), (y, 1)])
    solution = solve_reference(model)
    assert solution.status is SolveStatus.OPTIMAL
    assert solution.value(x) == pytest.approx(-5)
    assert solution.value(y) == pytest.approx(-1)
    assert solution.objective == pytest.approx(-4)


def test_equality_rows_and_boxed_variables():
    model = LpModel()
    x = model.add_variable("x", lb=1, ub=2, obj=1)
    y = model.add_variable("y", ub=5, obj=2)
    model.add_row("sum", Sense.EQ, 4, [(x, 1), (y, 1)])
    solution = solve_reference(model)
    assert solution.status is SolveStatus.OPTIMAL
    assert solution.objective == pytest.approx(2 + 2 * 2)
    assert_feasible(model, solution.values)


def test_row_cap():
    with pytest.raises(SizeLimit):
        solve_reference(_textbook(), ReferenceOptions(max_rows=2))


def test_iteration_cap_reports_limit():
    solution = solve_reference(_textbook(), ReferenceOptions(max_iterations=1))
    assert solution.status is SolveStatus.LIMIT


def test_degenerate_problem_terminates():
    # several constraints active at the optimum vertex
    model = LpModel()
    x = model.add_variable("x", obj=-1)
    y = model.add_variable("y", obj=-1)
    model.add_row("a", Sense.LE, 1, [(x, 1)])
    model.add_row("b", Sense.LE, 1, [(y, 1)])
    model.add_row("c", Sense.LE, 2, [(x, 1), (y, 1)])
    model.add_row("d", Sense.LE, 2, [(x, 2), (y, 0)])
    solution = solve_reference(model)
    assert solution.status is SolveStatus.OPTIMAL
    assert solution.objective == pytest.approx(-2)


def test_agrees_with_highs_on_a_base_model(fix_a):
    config, ts, mapping = fix_a
    model, _ = build_base_model(config, ts, mapping)
    solution = solve_reference(model)
    assert solution.status is SolveStatus.OPTIMAL
    assert_feasible(model, solution.values)
    assert solution.objective == pytest.approx(linprog_objective(model), rel=1e-6)


@pytest.mark.parametrize("formulation", ALL_FORMULATIONS, ids=lambda f: f.value)
def test_agrees_with_highs_with_self_discharge(fix_a, formulation):
    config, ts, mapping = fix_a
    document = config.model_dump(by_alias=True)
    for storage in document["storage"]:
        storage["eta_sdc"] = 0.001
    config = parse_config(document)
    model, handles = build_base_model(config, ts, mapping)
    apply_formulation(formulation, model, handles, mapping, config.lds_storages)

    solution = solve_reference(model, ReferenceOptions(max_iterations=20_000))
    assert solution.status is SolveStatus.OPTIMAL
    assert_feasible(model, solution.values, tol=1e-6)
    assert solution.objective == pytest.approx(linprog_objective(model), rel=1e-6)


def test_refactoring_keeps_the_same_vertex(fix_a):
    config, ts, mapping = fix_a
    model, handles = build_base_model(config, ts, mapping)
    apply_formulation(Formulation.IMPLICIT_HOURLY, model, handles, mapping, config.lds_storages)
    often = solve_reference(model, ReferenceOptions(refactor_every=1))
    rarely = solve_reference(model, ReferenceOptions(refactor_every=10_000))
    assert often.status is rarely.status is SolveStatus.OPTIMAL
    assert often.objective == pytest.approx(rarely.objective, rel=1e-7)
