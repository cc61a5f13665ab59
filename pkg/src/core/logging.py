"""
Logging setup for subcover.

One root configuration per process: a stderr handler (stdout carries
summaries and describe output) and a dated file under the log directory.
Modules take their logger from get_logger(__name__).
"""

import logging
import sys
from datetime import date
from pathlib import Path
from typing import List, Optional

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def resolve_level(name: str) -> int:
    """Numeric level for a level name, case-insensitive."""
    key = str(name).strip().upper()
    if key not in _LEVELS:
        raise ValueError(f"unknown log level {name!r}; expected one of {', '.join(_LEVELS)}")
    return getattr(logging, key)


def log_file_path(log_dir: Path, day: Optional[date] = None) -> Path:
    """<log_dir>/subcover_YYYYMMDD.log for ``day`` (default today)."""
    day = day or date.today()
    return Path(log_dir) / f"subcover_{day:%Y%m%d}.log"


def _handlers(level: int, log_path: Path, console: bool) -> List[logging.Handler]:
    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)
    handlers: List[logging.Handler] = []
    if console:
        handlers.append(logging.StreamHandler(sys.stderr))
    log_path.parent.mkdir(parents=True, exist_ok=True)
    handlers.append(logging.FileHandler(log_path, encoding="utf-8"))
    for handler in handlers:
        handler.setLevel(level)
        handler.setFormatter(formatter)
    return handlers


def setup_logging(level: str = "INFO", log_dir: Optional[Path] = None, console: bool = True) -> logging.Logger:
    """
    Configure the root logger, replacing any handlers already attached.

    Args:
        level: DEBUG, INFO, WARNING, ERROR or CRITICAL
        log_dir: Directory of the dated log file (default: logs/)
        console: Also log to stderr

    Returns:
        The root logger

    Raises:
        ValueError: For an unknown level name
    """
    numeric = resolve_level(level)
    log_path = log_file_path(Path(log_dir) if log_dir is not None else Path("logs"))

    root = logging.getLogger()
    root.setLevel(numeric)
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()
    for handler in _handlers(numeric, log_path, console):
        root.addHandler(handler)

    root.debug("logging at %s to %s", logging.getLevelName(numeric), log_path)
    return root


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)


def init_cli_logging(verbose: bool = False) -> logging.Logger:
    """Logging for the command line: the configured level, or DEBUG with -v."""
    from src.core.config import get_config

    config = get_config()
    return setup_logging(level="DEBUG" if verbose else config.log_level, log_dir=config.log_dir)
