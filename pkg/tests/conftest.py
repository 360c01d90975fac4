"""
Shared fixtures for the test suite.
"""

import pytest

from dilute_spectra.config import get_settings
from dilute_spectra.model import frame_from_p, frame_from_x, params_for


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch, tmp_path):
    """Settings rebuilt per test, with results written under tmp_path."""
    monkeypatch.setenv("DILUTE_SPECTRA_OUTPUT_DIR", str(tmp_path / "results"))
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def params4():
    return params_for(4)


@pytest.fixture
def small_x_frame(params4):
    return frame_from_x(0.1, params4)


@pytest.fixture
def critical_frame(params4):
    return frame_from_p(1e-6, params4)
