import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from asymho import OscillatorConfig, find_eigenvalues

TABLE_S = {
    "1.4": 1.4,
    "sqrt5": math.sqrt(5.0),
    "4": 4.0,
    "5": 5.0,
    "sqrt30": math.sqrt(30.0),
}


@pytest.fixture(scope="session")
def table_spectra():
    """Eight levels for each reference frequency ratio, solved once."""
    return {name: find_eigenvalues(OscillatorConfig(s=s), 8)
            for name, s in TABLE_S.items()}


@pytest.fixture(scope="session")
def spectrum_s1_64():
    return find_eigenvalues(OscillatorConfig(s=1.0), 64)


@pytest.fixture(scope="session")
def spectrum_sqrt5_64():
    return find_eigenvalues(OscillatorConfig(s=math.sqrt(5.0)), 64)


@pytest.fixture(autouse=True)
def _isolated_cache(monkeypatch, tmp_path):
    """Keep CLI spectrum caches inside the test sandbox."""
    monkeypatch.setenv("ASYMHO_CACHE_DIR", str(tmp_path / "cache"))
