"""
Configuration Management
========================
Configuration settings for the dilute A_L spectrum toolkit.

Environment variables are prefixed with DILUTE_SPECTRA_ and may also be
placed in a .env file at the project root.
"""

import logging
import logging.config
from functools import lru_cache
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic_settings import BaseSettings

# Load environment variables from .env file
env_path = Path(__file__).parent.parent / ".env"
load_dotenv(dotenv_path=env_path)


class Settings(BaseSettings):
    """
    Toolkit settings with environment variable support.

    Environment variables should be prefixed with DILUTE_SPECTRA_
    Example: DILUTE_SPECTRA_MAX_TERMS=200000
    """

    # Application settings
    app_name: str = "Dilute A_L Spectrum Toolkit"
    app_version: str = "1.0.0"

    # Kernel truncation
    tol: float = 1e-13
    max_terms: int = 1_000_000
    max_nome: float = 0.98

    # Bethe solver
    bethe_tol: float = 1e-10
    bethe_max_newton: int = 50
    bethe_max_halvings: int = 20
    continuation_start: float = 0.01
    continuation_steps: int = 8
    continuation_floor: float = 1e-4
    max_bethe_N: int = 12

    # Spectrum
    crossover_p: float = 0.5

    # Verification and output
    seed: int = 0
    output_dir: str = "results"

    # Logging
    log_level: str = "INFO"
    log_file: Optional[str] = None

    class Config:
        env_prefix = "DILUTE_SPECTRA_"
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = False


@lru_cache()
def get_settings() -> Settings:
    """
    Get cached settings instance.

    Returns:
        Settings instance
    """
    return Settings()


def get_project_root() -> Path:
    """
    Get the project root directory.

    Returns:
        Path to project root
    """
    return Path(__file__).parent.parent


def get_output_dir() -> Path:
    """
    Get the directory result files are written to.

    Relative settings values are resolved against the current working
    directory, so batch runs land next to the caller.

    Returns:
        Path to output directory
    """
    return Path(get_settings().output_dir)


# Truncation presets for the q-product kernel
TRUNCATION_PRESETS = {
    "fast": {
        "tol": 1e-10,
        "max_terms": 10_000
    },
    "default": {
        "tol": 1e-13,
        "max_terms": 1_000_000
    },
    "precise": {
        "tol": 1e-15,
        "max_terms": 5_000_000
    }
}


# Logging configuration
LOGGING_CONFIG = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "default": {
            "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            "datefmt": "%Y-%m-%d %H:%M:%S"
        },
        "detailed": {
            "format": "%(asctime)s - %(name)s - %(levelname)s - %(module)s:%(funcName)s:%(lineno)d - %(message)s",
            "datefmt": "%Y-%m-%d %H:%M:%S"
        }
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "level": "INFO",
            "formatter": "default",
            "stream": "ext://sys.stderr"
        }
    },
    "root": {
        "level": "WARNING",
        "handlers": ["console"]
    },
    "loggers": {
        "dilute_spectra": {
            "level": "DEBUG",
            "handlers": ["console"],
            "propagate": False
        }
    }
}


def build_logging_config(settings: Optional[Settings] = None) -> dict:
    """
    Build a dictConfig mapping from LOGGING_CONFIG and the current settings.

    A rotating file handler is attached only when a log file is configured.

    Args:
        settings: Settings to apply (defaults to get_settings())

    Returns:
        Logging configuration dictionary
    """
    settings = settings or get_settings()
    config = {
        key: (dict(value) if isinstance(value, dict) else value)
        for key, value in LOGGING_CONFIG.items()
    }
    config["handlers"] = {name: dict(handler) for name, handler in LOGGING_CONFIG["handlers"].items()}
    config["loggers"] = {name: dict(logger) for name, logger in LOGGING_CONFIG["loggers"].items()}

    level = settings.log_level.upper()
    config["handlers"]["console"]["level"] = level

    if settings.log_file:
        config["handlers"]["file"] = {
            "class": "logging.handlers.RotatingFileHandler",
            "level": "DEBUG",
            "formatter": "detailed",
            "filename": settings.log_file,
            "maxBytes": 10485760,  # 10MB
            "backupCount": 5
        }
        config["loggers"]["dilute_spectra"]["handlers"] = ["console", "file"]

    return config


_logging_configured = False


def setup_logging(settings: Optional[Settings] = None, force: bool = False) -> None:
    """Apply the logging configuration once per process."""
    global _logging_configured
    if _logging_configured and not force:
        return
    logging.config.dictConfig(build_logging_config(settings))
    _logging_configured = True
