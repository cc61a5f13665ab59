"""
Core utilities for subcover.

This module contains shared utilities used across all components:
- Configuration management
- Structured logging
- Exceptions, error logging and run logging
"""

from src.core.logging import get_logger, setup_logging
from src.core.config import get_config, validate_config, Config
from src.core.error_logger import ErrorLogger, get_error_logger
from src.core.run_logger import RunLogger
from src.core.error_models import (
    ErrorComponent,
    ErrorSeverity,
    ErrorType,
    ErrorStage,
    ErrorRecord,
    SubcoverError,
    SpecValidationError,
    DomainError,
    PreconditionError,
    EligibilityError,
    UnsupportedEngineError,
    ConfigError,
)

__all__ = [
    "get_logger",
    "setup_logging",
    "get_config",
    "validate_config",
    "Config",
    "ErrorLogger",
    "get_error_logger",
    "RunLogger",
    "ErrorComponent",
    "ErrorSeverity",
    "ErrorType",
    "ErrorStage",
    "ErrorRecord",
    "SubcoverError",
    "SpecValidationError",
    "DomainError",
    "PreconditionError",
    "EligibilityError",
    "UnsupportedEngineError",
    "ConfigError",
]
