from pathlib import PurePosixPath

from kedro.io import AbstractDataset

from ..lp.model import LpModel
from ..lp.mps import parse_mps, write_mps


class MpsDataset(AbstractDataset):
    """Kedro dataset storing an `LpModel` as a free-format MPS file."""

    def __init__(self, filepath: str, metadata: dict | None = None):
        self._filepath = PurePosixPath(filepath)
        self.metadata = metadata

    def load(self) -> LpModel:
        return parse_mps(self._filepath)

    def save(self, data: LpModel) -> None:
        write_mps(data, self._filepath)

    def _describe(self) -> dict:
        return {"filepath": str(self._filepath)}
