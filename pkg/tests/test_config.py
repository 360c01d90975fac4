"""
Tests for settings and logging configuration.
"""

import logging

from dilute_spectra.config import (
    LOGGING_CONFIG,
    Settings,
    build_logging_config,
    get_output_dir,
    get_settings,
    setup_logging,
)
from dilute_spectra.elliptic_kernel import Truncation


def test_defaults():
    settings = Settings()
    assert settings.tol == 1e-13
    assert settings.max_terms == 1_000_000
    assert settings.max_nome == 0.98
    assert settings.crossover_p == 0.5
    assert settings.max_bethe_N == 12


def test_environment_override(monkeypatch):
    monkeypatch.setenv("DILUTE_SPECTRA_TOL", "1e-9")
    monkeypatch.setenv("DILUTE_SPECTRA_MAX_TERMS", "500")
    get_settings.cache_clear()
    settings = get_settings()
    assert settings.tol == 1e-9
    assert settings.max_terms == 500
    assert Truncation.from_settings().max_terms == 500


def test_settings_cached():
    assert get_settings() is get_settings()


def test_output_dir_follows_settings(tmp_path):
    assert get_output_dir() == tmp_path / "results"


def test_logging_config_copies_template():
    settings = Settings(log_level="debug")
    config = build_logging_config(settings)
    assert config["handlers"]["console"]["level"] == "DEBUG"
    assert LOGGING_CONFIG["handlers"]["console"]["level"] == "INFO"
    assert "file" not in config["handlers"]


def test_log_file_handler(tmp_path):
    settings = Settings(log_file=str(tmp_path / "run.log"))
    config = build_logging_config(settings)
    assert config["handlers"]["file"]["filename"].endswith("run.log")
    assert config["loggers"]["dilute_spectra"]["handlers"] == ["console", "file"]


def test_setup_logging_applies_level():
    setup_logging(Settings(log_level="WARNING"), force=True)
    handler = logging.getLogger("dilute_spectra").handlers[0]
    assert handler.level == logging.WARNING
