"""
Run logging for experiment runs.

This module provides a fail-safe run logger that:
- Writes one validated record per run step to ``run_log.jsonl``
- Mirrors each step to the standard logger
- Never raises
"""

import json
import uuid
from pathlib import Path
from typing import Optional, Dict, Any, List
from datetime import datetime, timezone

from src.core.logging import get_logger
from src.core.run_models import (
    RunStep,
    RunStatus,
    RunLogRecord,
    get_step_description,
)

logger = get_logger(__name__)


def get_current_timestamp() -> str:
    """Current UTC time in ISO format."""
    return datetime.now(timezone.utc).isoformat()


class RunLogger:
    """
    Step logger bound to one run directory.

    Usage:
        >>> run_logger = RunLogger(run_dir)
        >>> run_logger.log_step(
        ...     step=RunStep.EXPERIMENT_START,
        ...     experiment="theorem1",
        ...     family="stable",
        ...     metadata={"replicas": 1000},
        ... )
    """

    def __init__(self, run_dir: Path, run_id: Optional[str] = None):
        self._file_path = Path(run_dir) / "run_log.jsonl"
        self.run_id = run_id or self.generate_run_id()

    @staticmethod
    def generate_run_id() -> str:
        """
        Generate a unique run ID for correlating steps.

        Returns:
            UUID string for this run
        """
        return str(uuid.uuid4())

    def log_step(
        self,
        step: RunStep,
        experiment: str,
        family: str = "unknown",
        started_at: Optional[str] = None,
        completed_at: Optional[str] = None,
        status: RunStatus = RunStatus.SUCCESS,
        metadata: Optional[Dict[str, Any]] = None,
    ) -> bool:
        """
        Log a run step.

        This method never raises exceptions.

        Returns:
            True if logged successfully, False otherwise
        """
        try:
            record = RunLogRecord(
                run_id=self.run_id,
                step=step,
                experiment=experiment,
                family=family,
                started_at=started_at or get_current_timestamp(),
                completed_at=completed_at,
                status=status,
                metadata=metadata or {},
            )
            record.duration_seconds = record.calculate_duration()

            desc = get_step_description(step, experiment=experiment, family=family, **(metadata or {}))
            logger.info(f"[Run] {experiment} | {step.value} | {desc}")

            return self._write_to_file(record)
        except Exception as e:
            logger.error(f"Run logger failed: {e} - Step: {step.value}")
            return False

    def _write_to_file(self, record: RunLogRecord) -> bool:
        """Append run log record as one JSON line."""
        try:
            self._file_path.parent.mkdir(parents=True, exist_ok=True)
            with open(self._file_path, "a", encoding="utf-8") as f:
                json.dump(record.model_dump(), f)
                f.write("\n")
            return True
        except Exception as e:
            logger.error(f"File run log write failed: {e}")
            return False

    def get_logs_for_run(self) -> List[Dict[str, Any]]:
        """
        Retrieve all records of this run, oldest first.

        Returns:
            List of run log records
        """
        if not self._file_path.exists():
            return []
        with open(self._file_path, encoding="utf-8") as f:
            rows = [json.loads(line) for line in f if line.strip()]
        return [r for r in rows if r.get("run_id") == self.run_id]
