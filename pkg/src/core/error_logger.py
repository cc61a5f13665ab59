"""
JSON-lines error log.

Inside a run the command line writes to ``<run dir>/errors.jsonl``; failures
before a run directory exists go to a dated file under
``$SUBCOVER_LOG_DIR/errors/``. Writing a record never raises, so a broken
log cannot hide the error being logged.
"""

import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

from src.core.config import get_config
from src.core.error_models import ErrorComponent, ErrorRecord, ErrorSeverity, ErrorType
from src.core.logging import get_logger

logger = get_logger(__name__)

_error_logger: Optional["ErrorLogger"] = None


class ErrorLogger:
    """
    Appends ErrorRecords to one JSONL file.

    Usage:
        >>> error_logger = ErrorLogger(run_dir / "errors.jsonl")
        >>> error_logger.log_exception(e, ErrorComponent.VERIFY, ErrorStage.RUN_REPLICAS, "theorem1", seed=7)
    """

    def __init__(self, file_path: Optional[Path] = None):
        self._file_path = Path(file_path) if file_path is not None else None

    @property
    def file_path(self) -> Path:
        # resolved on every call; SUBCOVER_LOG_DIR may change between calls
        if self._file_path is not None:
            return self._file_path
        day = datetime.now(timezone.utc).strftime("%Y%m%d")
        return get_config().log_dir / "errors" / f"errors_{day}.jsonl"

    def log_error(
        self,
        component: ErrorComponent,
        stage: str,
        error_type: ErrorType,
        experiment: str,
        message: str,
        severity: ErrorSeverity = ErrorSeverity.ERROR,
        metadata: Optional[Dict[str, Any]] = None,
    ) -> bool:
        """Log a record that has no exception behind it. Returns False if nothing was written."""
        try:
            record = ErrorRecord(
                component=component,
                stage=stage,
                error_type=error_type,
                severity=severity,
                experiment=experiment,
                message=message,
                metadata=metadata or {},
            )
        except Exception as e:
            logger.error("invalid error record (%s); original message: %s", e, message)
            return False
        return self._append(record)

    def log_exception(
        self,
        exc: BaseException,
        component: ErrorComponent,
        stage: str,
        experiment: str,
        **context: Any,
    ) -> bool:
        """
        Log a caught exception, classified by ErrorRecord.from_exception.

        ``context`` takes the optional from_exception arguments (severity,
        error_type, include_stack_trace, family, seed, metadata).

        Returns:
            True if the record was written
        """
        try:
            record = ErrorRecord.from_exception(exc, component, stage, experiment, **context)
        except Exception as e:
            logger.error("invalid error record (%s); original exception: %s: %s", e, type(exc).__name__, exc)
            return False
        return self._append(record)

    def _append(self, record: ErrorRecord) -> bool:
        path = self.file_path
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "a", encoding="utf-8") as f:
                f.write(json.dumps(record.model_dump()) + "\n")
        except OSError as e:
            logger.error("cannot append to error log %s: %s", path, e)
            return False
        logger.debug("%s logged to %s", record.error_type, path)
        return True

    def read_records(self) -> List[Dict[str, Any]]:
        """Every record in the file, oldest first; empty when the file does not exist."""
        path = self.file_path
        if not path.exists():
            return []
        with open(path, encoding="utf-8") as f:
            return [json.loads(line) for line in f if line.strip()]


def get_error_logger() -> ErrorLogger:
    """Process-wide logger for errors raised outside a run directory."""
    global _error_logger
    if _error_logger is None:
        _error_logger = ErrorLogger()
    return _error_logger
