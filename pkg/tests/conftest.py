import pytest

from tests.helpers import RAW, load_instance


@pytest.fixture(scope="session")
def fix_a_paths():
    return RAW / "fix_a.toml", RAW / "fix_a.csv"


@pytest.fixture(scope="session")
def fix_b_paths():
    return RAW / "fix_b.toml", RAW / "fix_b.csv"


@pytest.fixture(scope="session")
def fix_a(fix_a_paths):
    """(config, ts, mapping) of FIX-A: 4 periods of 4 steps clustered into 2 representatives."""
    return load_instance(*fix_a_paths)


@pytest.fixture(scope="session")
def fix_b(fix_b_paths):
    """(config, ts, mapping) of FIX-B: 3 charging days followed by 3 draining days."""
    return load_instance(*fix_b_paths)
