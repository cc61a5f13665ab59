"""
Exceptions raised by subcover and the record written to the error log.

Every deliberate failure is a SubcoverError subclass carrying its ErrorType,
so the command line can map it to an exit status and the error log can
classify it without string matching.
"""

import json
import traceback
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Dict, Optional, Tuple, Type

from pydantic import BaseModel, ConfigDict, Field, field_validator

STACK_TRACE_LIMIT = 10_000
MESSAGE_LIMIT = 5_000


class ErrorComponent(str, Enum):
    """Package an error was caught in."""
    MODEL = "model"
    SIMULATE = "simulate"
    COVERING = "covering"
    POTENTIAL = "potential"
    VERIFY = "verify"
    CLI = "cli"
    CONFIG = "config"
    UNKNOWN = "unknown"


class ErrorSeverity(str, Enum):
    DEBUG = "debug"
    INFO = "info"
    WARNING = "warning"
    ERROR = "error"
    CRITICAL = "critical"


class ErrorType(str, Enum):
    # spec and argument checks
    VALIDATION_ERROR = "validation_error"
    DOMAIN_ERROR = "domain_error"
    PRECONDITION_ERROR = "precondition_error"
    ELIGIBILITY_ERROR = "eligibility_error"

    # simulation and numerics
    UNSUPPORTED_ENGINE = "unsupported_engine"
    NUMERICAL_ERROR = "numerical_error"

    # files and run configs
    FILE_ERROR = "file_error"
    PARSE_ERROR = "parse_error"
    CONFIG_ERROR = "config_error"

    UNKNOWN = "unknown"


class ErrorStage:
    """Stage names used in error and run logs."""
    LOAD_CONFIG = "load_config"
    VALIDATE_CONFIG = "validate_config"
    BUILD_SPEC = "build_spec"
    VALIDATE_SPEC = "validate_spec"
    RUN_REPLICAS = "run_replicas"
    EVALUATE_POTENTIAL = "evaluate_potential"
    EVALUATE_VERDICTS = "evaluate_verdicts"
    WRITE_REPORT = "write_report"
    WRITE_TABLES = "write_tables"
    DESCRIBE_SPEC = "describe_spec"


# ---------------- Exceptions ----------------

class SubcoverError(ValueError):
    """Base class of every error raised on purpose by subcover."""

    error_type: ErrorType = ErrorType.UNKNOWN


class SpecValidationError(SubcoverError):
    """A subordinator specification has invalid parameters."""

    error_type = ErrorType.VALIDATION_ERROR


class DomainError(SubcoverError):
    """An argument lies outside the domain of an operation."""

    error_type = ErrorType.DOMAIN_ERROR


class PreconditionError(SubcoverError):
    """An operation precondition does not hold (e.g. zero drift for the series)."""

    error_type = ErrorType.PRECONDITION_ERROR


class EligibilityError(SubcoverError):
    """The process is compound Poisson, so the covering theorems do not apply."""

    error_type = ErrorType.ELIGIBILITY_ERROR


class UnsupportedEngineError(SubcoverError):
    """The requested simulation engine cannot handle this family."""

    error_type = ErrorType.UNSUPPORTED_ENGINE


class ConfigError(SubcoverError):
    """A run configuration is invalid; ``key`` names the offending entry."""

    error_type = ErrorType.CONFIG_ERROR

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


# checked in order after the SubcoverError hierarchy
_BUILTIN_TYPES: Tuple[Tuple[Type[BaseException], ErrorType], ...] = (
    (json.JSONDecodeError, ErrorType.PARSE_ERROR),
    (ArithmeticError, ErrorType.NUMERICAL_ERROR),
    (OSError, ErrorType.FILE_ERROR),
)

# unexpected exceptions keep their stack trace; these are expected
_EXPECTED_NAMES = frozenset({"ValidationError", "FileNotFoundError", "KeyError"})


class ErrorRecord(BaseModel):
    """
    One line of the error log.

    ``family`` and ``seed`` are set for failures inside a run so the
    failing configuration can be rerun as is.
    """
    component: ErrorComponent
    stage: str = Field(..., min_length=1, max_length=100)
    error_type: ErrorType
    severity: ErrorSeverity = ErrorSeverity.ERROR
    experiment: str = Field(..., min_length=1, max_length=255)
    message: str = Field(..., min_length=1)

    family: Optional[str] = None
    seed: Optional[int] = None
    exception_type: Optional[str] = Field(None, max_length=255)
    stack_trace: Optional[str] = None
    metadata: Dict[str, Any] = Field(default_factory=dict)

    created_at: str = Field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    model_config = ConfigDict(str_strip_whitespace=True, validate_assignment=True, use_enum_values=True)

    @field_validator("stage")
    @classmethod
    def normalize_stage(cls, v: str) -> str:
        return v.strip().lower().replace(" ", "_") or "unknown"

    @field_validator("message")
    @classmethod
    def truncate_message(cls, v: str) -> str:
        return v.strip()[:MESSAGE_LIMIT] or "no message"

    @field_validator("metadata")
    @classmethod
    def sanitize_metadata(cls, v: Dict[str, Any]) -> Dict[str, Any]:
        """Replace values json cannot encode (paths, arrays, specs) by their str()."""
        sanitized = {}
        for key, value in v.items():
            try:
                json.dumps(value)
            except (TypeError, ValueError):
                value = str(value)
            sanitized[key] = value
        return sanitized

    @classmethod
    def from_exception(
        cls,
        exc: BaseException,
        component: ErrorComponent,
        stage: str,
        experiment: str,
        severity: ErrorSeverity = ErrorSeverity.ERROR,
        error_type: Optional[ErrorType] = None,
        include_stack_trace: Optional[bool] = None,
        family: Optional[str] = None,
        seed: Optional[int] = None,
        metadata: Optional[Dict[str, Any]] = None,
    ) -> "ErrorRecord":
        """
        Build a record from a caught exception.

        Args:
            exc: The exception
            component: Package it was caught in
            stage: One of the ErrorStage names
            experiment: Experiment name, or "config" / "describe" outside a run
            severity: Severity (default ERROR)
            error_type: Explicit type; classified from ``exc`` when None
            include_stack_trace: Force the stack trace on or off; decided from ``exc`` when None
            family: Spec family of the run, if known
            seed: Master seed of the run, if known
            metadata: Extra context

        Example:
            >>> try:
            ...     check_eligible(spec)
            ... except EligibilityError as e:
            ...     record = ErrorRecord.from_exception(e, ErrorComponent.MODEL, ErrorStage.VALIDATE_SPEC, "theorem1")
        """
        if include_stack_trace is None:
            include_stack_trace = cls._should_include_stack(exc, severity)

        return cls(
            component=component,
            stage=stage,
            error_type=error_type or cls._classify_exception(exc),
            severity=severity,
            experiment=experiment,
            message=str(exc) or type(exc).__name__,
            family=family,
            seed=seed,
            exception_type=f"{type(exc).__module__}.{type(exc).__name__}",
            stack_trace=cls._format_stack(exc) if include_stack_trace else None,
            metadata=metadata or {},
        )

    @staticmethod
    def _classify_exception(exc: BaseException) -> ErrorType:
        if isinstance(exc, SubcoverError):
            return exc.error_type
        for kind, error_type in _BUILTIN_TYPES:
            if isinstance(exc, kind):
                return error_type
        if "validation" in type(exc).__name__.lower():
            return ErrorType.VALIDATION_ERROR
        return ErrorType.UNKNOWN

    @staticmethod
    def _should_include_stack(exc: BaseException, severity: ErrorSeverity) -> bool:
        if severity == ErrorSeverity.CRITICAL:
            return True
        if severity != ErrorSeverity.ERROR or isinstance(exc, SubcoverError):
            return False
        return type(exc).__name__ not in _EXPECTED_NAMES

    @staticmethod
    def _format_stack(exc: BaseException) -> Optional[str]:
        try:
            text = "".join(traceback.format_exception(type(exc), exc, exc.__traceback__))
        except Exception:
            return None
        if len(text) > STACK_TRACE_LIMIT:
            text = text[:STACK_TRACE_LIMIT] + "\n... (truncated)"
        return text
