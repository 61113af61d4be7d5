import math

import numpy as np
import pytest

from kedro_ldslab.errors import DuplicateName, InvertedBounds, UnknownVariable
from kedro_ldslab.lp import LpModel, Sense, Solution, SolveStatus, model_stats


def test_add_variable_returns_stable_handles():
    model = LpModel()
    assert model.add_variable("x", 0, math.inf, 1) == 0
    assert model.add_variable("y", lb=-1, ub=1) == 1
    assert model.variable_handle("y") == 1


def test_add_variable_rejects_duplicates_and_inverted_bounds():
    model = LpModel()
    model.add_variable("x")
    with pytest.raises(DuplicateName):
        model.add_variable("x")
    with pytest.raises(InvertedBounds):
        model.add_variable("z", lb=2, ub=1)


def test_add_row_merges_repeated_handles():
    model = LpModel()
    x = model.add_variable("x")
    model.add_row("c", "<=", 3, [(x, 1), (x, 1)])
    assert model.rows[0].coeffs == {x: 2.0}
    assert model.rows[0].sense is Sense.LE


def test_empty_row_is_legal():
    model = LpModel()
    model.add_row("zero", Sense.EQ, 0.0, [])
    assert model_stats(model).num_nonzeros == 0


def test_add_row_rejects_unknown_variables_and_reused_names():
    model = LpModel()
    x = model.add_variable("x")
    with pytest.raises(UnknownVariable):
        model.add_row("c", Sense.LE, 1, [(99, 1.0)])
    model.add_row("c", Sense.LE, 1, [(x, 1.0)])
    with pytest.raises(DuplicateName):
        model.add_row("c", Sense.GE, 0, [(x, 1.0)])
    with pytest.raises(DuplicateName):
        model.add_row("OBJ", Sense.GE, 0, [(x, 1.0)])


def test_model_stats():
    empty = model_stats(LpModel())
    assert (empty.num_rows, empty.num_vars, empty.num_nonzeros) == (0, 0, 0)
    model = LpModel()
    x, y = model.add_variable("x"), model.add_variable("y")
    model.add_row("c", Sense.LE, 1, [(x, 1), (y, 2)])
    stats = model_stats(model)
    assert (stats.num_rows, stats.num_vars, stats.num_nonzeros) == (1, 2, 2)


def test_constraint_matrix_and_row_activity():
    model = LpModel()
    x, y = model.add_variable("x"), model.add_variable("y")
    model.add_row("a", Sense.LE, 4, [(x, 1), (y, 2)])
    model.add_row("b", Sense.GE, 0, [(y, -3)])
    np.testing.assert_array_equal(model.constraint_matrix().toarray(), [[1, 2], [0, -3]])
    np.testing.assert_allclose(model.row_activity([1.0, 2.0]), [5.0, -6.0])


def test_copy_is_independent_and_accepts_the_same_handles():
    model = LpModel()
    x = model.add_variable("x", obj=1)
    clone = model.copy()
    clone.add_row("c", Sense.GE, 1, [(x, 1)])
    assert model.num_rows == 0 and clone.num_rows == 1
    assert clone.variables == model.variables


def test_solution_without_values_refuses_lookups():
    solution = Solution(SolveStatus.INFEASIBLE)
    assert not solution.has_values
    with pytest.raises(ValueError, match="infeasible"):
        solution.value(0)
