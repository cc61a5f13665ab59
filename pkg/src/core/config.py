"""
Process-wide settings for subcover: log and output directories, default
worker count and seed, progress bars and the simulation cutoffs, read from
SUBCOVER_* variables and configs/.env.

Per-run experiment settings live in run configuration files (see
src/cli/config.py); this module only holds process-wide settings.
"""

import os
from pathlib import Path
from typing import Optional
from dotenv import load_dotenv

from src.core.logging import resolve_level


_FALSE_VALUES = {"0", "false", "False"}


class Config:
    """
    Application configuration loaded from environment variables.

    All configuration is read from configs/.env file or environment variables.
    See configs/.env.example for documentation of all settings.
    """

    def __init__(self, env_path: Optional[Path] = None):
        """
        Initialize configuration from environment.

        Args:
            env_path: Path to .env file (default: configs/.env)
        """
        if env_path is None:
            env_path = Path("configs/.env")

        # Environment wins over the file so CI can override single keys
        load_dotenv(dotenv_path=env_path, override=False)

        # === Logging Configuration ===
        self.log_level: str = os.getenv("SUBCOVER_LOG_LEVEL", "INFO")
        self.log_dir: Path = Path(os.getenv("SUBCOVER_LOG_DIR", "logs"))

        # === Output Paths ===
        self.base_out_dir: Path = Path(os.getenv("SUBCOVER_OUT_DIR", "out"))

        # === Execution ===
        self.workers: int = int(os.getenv("SUBCOVER_WORKERS", "1"))
        self.default_seed: int = int(os.getenv("SUBCOVER_DEFAULT_SEED", "20240607"))
        self.progress: bool = os.getenv("SUBCOVER_PROGRESS", "1") not in _FALSE_VALUES

        # === Simulation Defaults ===
        # truncation level of the events engine relative to the smallest mesh
        self.epsilon_ratio: float = float(os.getenv("SUBCOVER_EPSILON_RATIO", "1e-3"))
        self.max_path_events: int = int(os.getenv("SUBCOVER_MAX_PATH_EVENTS", "50000000"))

    def validate(self) -> None:
        """
        Validate configuration values.

        Raises:
            ValueError: If configuration is invalid
        """
        errors = []

        try:
            resolve_level(self.log_level)
        except ValueError as e:
            errors.append(f"SUBCOVER_LOG_LEVEL: {e}")

        if self.workers < 1:
            errors.append(f"SUBCOVER_WORKERS must be positive, got {self.workers}")

        if self.default_seed < 0:
            errors.append(f"SUBCOVER_DEFAULT_SEED must be non-negative, got {self.default_seed}")

        if not 0 < self.epsilon_ratio < 1:
            errors.append(f"SUBCOVER_EPSILON_RATIO must lie in (0, 1), got {self.epsilon_ratio}")

        if self.max_path_events <= 0:
            errors.append(f"SUBCOVER_MAX_PATH_EVENTS must be positive, got {self.max_path_events}")

        if errors:
            raise ValueError("Configuration validation failed:\n" + "\n".join(f"  - {e}" for e in errors))

    def __repr__(self) -> str:
        """Return string representation of config."""
        return (
            f"Config(\n"
            f"  log_level={self.log_level},\n"
            f"  base_out_dir={self.base_out_dir},\n"
            f"  workers={self.workers},\n"
            f"  default_seed={self.default_seed},\n"
            f"  epsilon_ratio={self.epsilon_ratio}\n"
            f")"
        )


# Global configuration instance (lazy-loaded)
_config: Optional[Config] = None


def get_config(env_path: Optional[Path] = None) -> Config:
    """
    Get the global configuration instance.

    Args:
        env_path: Optional path to .env file (only used on first call)

    Returns:
        Global Config instance

    Example:
        >>> config = get_config()
        >>> config.epsilon_ratio
        0.001
    """
    global _config
    if _config is None:
        _config = Config(env_path=env_path)
    return _config


def reset_config() -> None:
    """Drop the cached configuration (tests change the environment)."""
    global _config
    _config = None


def validate_config(env_path: Optional[Path] = None) -> None:
    """
    Validate configuration and raise error if invalid.

    This should be called at application startup to fail fast
    if configuration is incorrect.

    Args:
        env_path: Optional path to .env file

    Raises:
        ValueError: If configuration is invalid
    """
    config = get_config(env_path=env_path)
    config.validate()
