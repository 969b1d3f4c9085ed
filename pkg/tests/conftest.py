import os
from unittest.mock import patch

import numpy as np
import pytest

from core.settings import settings
from rmt.tracy_widom import get_tw1_table, tw1_quantile
from simulate import EigenSpectrum


def pytest_addoption(parser):
    parser.addoption(
        "--run-slow",
        action="store_true",
        default=False,
        help="run Monte Carlo checks at full replication counts",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: mark test as a long Monte Carlo run")


def pytest_collection_modifyitems(config, items):
    if not config.getoption("--run-slow"):
        skip_slow = pytest.mark.skip(reason="need --run-slow option to run")
        for item in items:
            if "slow" in item.keywords:
                item.add_marker(skip_slow)


@pytest.fixture
def mock_env():
    """Fixture to ensure environment is clean for each test."""
    with patch.dict(os.environ, {}, clear=True):
        yield


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def spectrum():
    """Two clear spikes above a flat noise bulk, p = 10, n = 1000."""
    values = [12.0, 7.0, 1.1, 1.08, 1.05, 1.0, 0.98, 0.95, 0.9, 0.85]
    return EigenSpectrum.from_values(values, n=1000)


def _clear_tw1_caches():
    get_tw1_table.cache_clear()
    tw1_quantile.cache_clear()


@pytest.fixture
def tw_table_file(tmp_path):
    """TW_TABLE_PATH pointed at a file the test writes; cached tables are dropped around it."""
    path = tmp_path / "tw1.txt"
    _clear_tw1_caches()
    with patch.object(settings, "TW_TABLE_PATH", path):
        yield path
    _clear_tw1_caches()
