"""
Pydantic models for structured run logging.

This module defines type-safe run log models with automatic validation
so every step of an experiment run is recorded in the same shape.
"""

import json
from datetime import datetime, timezone
from enum import Enum
from typing import Optional, Dict, Any
from pydantic import BaseModel, Field, field_validator, ConfigDict


class RunStep(str, Enum):
    """
    Step types of an experiment run.

    These represent the major steps of the config -> replicas -> report flow.
    """
    CONFIG_LOADED = "config_loaded"
    EXPERIMENT_START = "experiment_start"
    REPLICAS_COMPLETE = "replicas_complete"
    VERDICTS_EVALUATED = "verdicts_evaluated"
    REPORT_WRITTEN = "report_written"


class RunStatus(str, Enum):
    """Run step execution status."""
    IN_PROGRESS = "in_progress"
    SUCCESS = "success"
    FAILED = "failed"


class RunLogRecord(BaseModel):
    """
    Structured run log record.

    One record per step; ``run_id`` correlates the steps of one run.
    """
    run_id: str = Field(..., min_length=1, description="UUID correlating steps of a run")

    step: RunStep = Field(..., description="Run step type")
    experiment: str = Field(..., min_length=1, max_length=100, description="Experiment name")
    family: str = Field(default="unknown", max_length=100, description="Subordinator family")

    started_at: str = Field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(),
        description="Step start timestamp (ISO 8601)"
    )
    completed_at: Optional[str] = Field(None, description="Step completion timestamp (ISO 8601)")
    duration_seconds: Optional[float] = Field(None, ge=0, description="Duration in seconds")

    status: RunStatus = Field(default=RunStatus.SUCCESS, description="Execution status")
    metadata: Dict[str, Any] = Field(
        default_factory=dict,
        description="Additional context (replica counts, verdict counts, paths)"
    )

    model_config = ConfigDict(
        str_strip_whitespace=True,
        validate_assignment=True,
        use_enum_values=True,
    )

    @field_validator("experiment")
    @classmethod
    def validate_experiment(cls, v: str) -> str:
        """Normalize experiment names to lower-case."""
        if not v or not v.strip():
            return "unknown"
        return v.strip().lower()

    @field_validator("metadata")
    @classmethod
    def sanitize_metadata(cls, v: Dict[str, Any]) -> Dict[str, Any]:
        """Converts non-serializable metadata values to strings."""
        sanitized = {}
        for key, value in v.items():
            try:
                json.dumps(value)
                sanitized[key] = value
            except (TypeError, ValueError):
                sanitized[key] = str(value)
        return sanitized

    def calculate_duration(self) -> Optional[float]:
        """
        Calculate duration from started_at and completed_at timestamps.

        Returns:
            Duration in seconds, or None if completed_at is not set
        """
        if not self.completed_at:
            return None

        try:
            start = datetime.fromisoformat(self.started_at.replace('Z', '+00:00'))
            end = datetime.fromisoformat(self.completed_at.replace('Z', '+00:00'))
            return round((end - start).total_seconds(), 3)
        except Exception:
            return None


STEP_DESCRIPTIONS = {
    RunStep.CONFIG_LOADED: "Loaded configuration for {experiment}",
    RunStep.EXPERIMENT_START: "Running {experiment} on {family}",
    RunStep.REPLICAS_COMPLETE: "Replicas complete ({replicas} per mesh)",
    RunStep.VERDICTS_EVALUATED: "Verdicts evaluated, {failed} blocking failures",
    RunStep.REPORT_WRITTEN: "Report written to {run_dir}",
}


def get_step_description(step: RunStep, **kwargs) -> str:
    """
    Get human-readable description for a step.

    Args:
        step: Run step
        **kwargs: Context for formatting (e.g., experiment, replicas)

    Returns:
        Formatted description string
    """
    template = STEP_DESCRIPTIONS.get(step, str(step))
    try:
        return template.format(**kwargs)
    except (KeyError, ValueError):
        return template
