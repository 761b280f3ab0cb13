import json

import pytest

from renyisharp.app_info import THREADS_ENV
from renyisharp.core.settings import SettingsManager
from renyisharp.measures import CondSource

SMALL_SETTINGS = {
    "threads": 1,
    "random_budget": 40,
    "random_max_n": 4,
    "random_max_k": 3,
    "grid_specs": [[2, 1, 0.1], [3, 1, 0.25], [3, 2, 0.5]],
    "estimator_grid_specs": [[2, 2, 0.25], [3, 2, 0.5]],
    "curve_points": 11,
}


@pytest.fixture(autouse=True)
def _no_thread_override(monkeypatch):
    monkeypatch.delenv(THREADS_ENV, raising=False)


@pytest.fixture
def bsc():
    """Uniform Y through a binary symmetric channel with crossover 0.1."""
    return CondSource.from_channels([[0.9, 0.1], [0.1, 0.9]])


@pytest.fixture
def settings_file(tmp_path):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps(SMALL_SETTINGS), encoding="utf-8")
    return path


@pytest.fixture
def settings(settings_file, tmp_path):
    return SettingsManager(settings_path=settings_file, log_dir=tmp_path / "log")
