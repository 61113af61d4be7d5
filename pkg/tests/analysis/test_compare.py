import math

import pytest

from kedro_ldslab.analysis import ComparisonReport, capacity_difference, compare_formulations
from kedro_ldslab.errors import NumericalError
from kedro_ldslab.formulations import ALL_FORMULATIONS, Formulation
from kedro_ldslab.lp import solve_reference


def _flaky_solver(model):
    if model.name == "ldslab-implicit-hourly":
        raise NumericalError("pivot element 1e-13 below 1e-11")
    return solve_reference(model)


def test_empty_request_gives_an_empty_report(fix_a):
    report = compare_formulations(*fix_a, [], solve_reference)
    assert len(report) == 0
    assert list(report.to_frame().columns)[:3] == ["formulation", "status", "objective"]


def test_fix_a_all_formulations(fix_a):
    report = compare_formulations(*fix_a, list(ALL_FORMULATIONS), solve_reference)
    assert [e.formulation for e in report] == list(ALL_FORMULATIONS)
    assert report.all_optimal
    exact = [report.entry(f).objective for f in ALL_FORMULATIONS[:3]]
    assert exact == pytest.approx([exact[0]] * 3, rel=1e-6)
    assert report.entry(Formulation.ORIGINAL).objective <= exact[2] + 1e-9 * (1 + abs(exact[2]))
    assert [report.entry(f).violations for f in ALL_FORMULATIONS[:3]] == [0, 0, 0]
    assert report.entry(Formulation.ORIGINAL).violations >= 0
    for entry in report:
        assert entry.rows > 0 and entry.nonzeros > entry.rows
        assert entry.build_s > 0 and entry.solve_s > 0


def test_request_order_is_kept(fix_a):
    order = [Formulation.ORIGINAL, Formulation.EXPLICIT_HOURLY]
    report = compare_formulations(*fix_a, order, solve_reference, record_timings=False)
    assert [e.formulation for e in report] == order
    assert all(e.build_s == 0 and e.solve_s == 0 for e in report)


def test_a_failing_formulation_does_not_stop_the_others(fix_a):
    report = compare_formulations(*fix_a, list(ALL_FORMULATIONS), _flaky_solver)
    failed = report.entry(Formulation.IMPLICIT_HOURLY)
    assert failed.status == "error"
    assert "pivot" in failed.message
    assert failed.objective is None and failed.violations is None
    assert failed.rows > 0
    assert not report.all_optimal
    assert all(report.entry(f).optimal for f in ALL_FORMULATIONS if f is not Formulation.IMPLICIT_HOURLY)


def test_parallel_matches_serial(fix_a):
    formulations = [Formulation.IMPLICIT_MINMAX, Formulation.ORIGINAL]
    serial = compare_formulations(*fix_a, formulations, solve_reference, record_timings=False)
    parallel = compare_formulations(*fix_a, formulations, solve_reference, n_jobs=2, record_timings=False)
    assert parallel.to_frame().equals(serial.to_frame())


def test_capacity_difference(fix_b):
    report = compare_formulations(
        *fix_b, [Formulation.IMPLICIT_MINMAX, Formulation.ORIGINAL], solve_reference
    )
    assert capacity_difference(report) == pytest.approx(-25.0, rel=1e-6)
    assert report.entry(Formulation.ORIGINAL).average_violations >= 1


def test_capacity_difference_needs_both_entries(fix_a):
    report = compare_formulations(*fix_a, [Formulation.ORIGINAL], _flaky_solver)
    with pytest.raises(KeyError):
        capacity_difference(report)


def test_capacity_difference_of_a_failed_entry_is_nan(fix_a):
    report = compare_formulations(
        *fix_a, [Formulation.IMPLICIT_HOURLY, Formulation.IMPLICIT_MINMAX], _flaky_solver
    )
    assert math.isnan(capacity_difference(report, Formulation.IMPLICIT_HOURLY))
