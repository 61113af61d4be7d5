import pytest
from kedro.io import DatasetError

from kedro_ldslab.datasets import PeriodMapping, PeriodMappingDataset, read_period_mapping, write_period_mapping
from kedro_ldslab.datasets.period_mapping import ASSIGNMENT_FILE, REPRESENTATIVES_FILE
from kedro_ldslab.errors import InputNotFoundError, InvariantError, ParseError


def _mapping():
    return PeriodMapping(N=5, T=3, rep_of=[0, 0, 1, 1, 0], designated=[1, 3], weight=[3, 2])


def test_derived_sizes():
    mapping = _mapping()
    assert (mapping.W, mapping.H) == (2, 15)
    assert mapping.step_of(1, 2) == 11


@pytest.mark.parametrize(
    "rep_of, designated, weight",
    [
        ([0, 0, 1, 1, 0], [1, 3], [2, 3]),  # weights disagree with the assignment
        ([0, 0, 1, 1, 0], [2, 3], [3, 2]),  # designated period 2 belongs to representative 1
        ([0, 0, 2, 1, 0], [1, 3], [3, 2]),  # representative 2 does not exist
        ([0, 0, 1, 1], [1, 3], [2, 2]),  # N periods expected
    ],
)
def test_invariants(rep_of, designated, weight):
    with pytest.raises(InvariantError):
        PeriodMapping(N=5, T=3, rep_of=rep_of, designated=designated, weight=weight)


def test_files_are_one_based(tmp_path):
    write_period_mapping(_mapping(), tmp_path)
    assert (tmp_path / ASSIGNMENT_FILE).read_text() == (
        "period,representative\n1,1\n2,1\n3,2\n4,2\n5,1\n"
    )
    assert (tmp_path / REPRESENTATIVES_FILE).read_text() == (
        "representative,designated_period,weight\n1,2,3\n2,4,2\n"
    )


def test_read_back(tmp_path):
    write_period_mapping(_mapping(), tmp_path)
    assert read_period_mapping(tmp_path, T=3) == _mapping()


def test_read_missing_file(tmp_path):
    with pytest.raises(InputNotFoundError):
        read_period_mapping(tmp_path, T=3)


def test_read_inconsistent_files(tmp_path):
    write_period_mapping(_mapping(), tmp_path)
    (tmp_path / REPRESENTATIVES_FILE).write_text("representative,designated_period,weight\n1,2,4\n2,4,1\n")
    with pytest.raises(ParseError, match="inconsistent"):
        read_period_mapping(tmp_path, T=3)


def test_dataset(tmp_path):
    dataset = PeriodMappingDataset(path=str(tmp_path / "mapping"), steps_per_period=3)
    dataset.save(_mapping())
    assert dataset.load() == _mapping()
    with pytest.raises(DatasetError, match="steps_per_period"):
        PeriodMappingDataset(path=str(tmp_path / "mapping")).load()
