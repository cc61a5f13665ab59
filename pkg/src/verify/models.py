"""
Pydantic models for experiment reports.

A report is deterministic given (spec, parameters, seed): wall-clock,
timestamps and worker counts live only in ``metadata``, which is excluded
when reports are compared.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

REPORT_SCHEMA = "subcover.report/1"


class Verdict(BaseModel):
    """Pass/fail outcome of one named criterion."""

    criterion: str = Field(..., min_length=1)
    passed: bool
    blocking: bool = True
    detail: str = ""
    value: Optional[float] = None
    threshold: Optional[float] = None

    model_config = ConfigDict(frozen=True)


class ReportRow(BaseModel):
    """One statistic at one mesh (or abscissa) with its error and provenance."""

    delta: Optional[float] = Field(default=None, gt=0.0)
    statistic: str
    value: float
    stderr: float = Field(default=0.0, ge=0.0)
    ci_low: Optional[float] = None
    ci_high: Optional[float] = None
    u_value: Optional[float] = None
    u_method: Optional[str] = None
    replicas: int = Field(default=0, ge=0)
    engine: Optional[str] = None
    extra: Dict[str, Any] = Field(default_factory=dict)

    model_config = ConfigDict(frozen=True)

    def as_record(self) -> Dict[str, Any]:
        record = self.model_dump(exclude={"extra"})
        record.update(self.extra)
        return record


class ExperimentReport(BaseModel):
    """Rows, verdicts and named tables produced by one experiment run."""

    schema_id: str = Field(default=REPORT_SCHEMA, alias="schema")
    experiment: str
    spec: str
    spec_document: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    parameters: Dict[str, Any] = Field(default_factory=dict)
    rows: List[ReportRow] = Field(default_factory=list)
    verdicts: List[Verdict] = Field(default_factory=list)
    # plot-ready tables go to CSV files, not into the JSON document
    tables: Dict[str, List[Dict[str, Any]]] = Field(default_factory=dict, exclude=True)
    warnings: List[str] = Field(default_factory=list)
    metadata: Dict[str, Any] = Field(default_factory=dict)

    model_config = ConfigDict(populate_by_name=True)

    @field_validator("experiment")
    @classmethod
    def validate_experiment(cls, v: str) -> str:
        v = v.strip()
        if not v:
            raise ValueError("experiment name must not be empty")
        return v

    @property
    def passed(self) -> bool:
        """True when every blocking verdict passed."""
        return all(v.passed for v in self.verdicts if v.blocking)

    @property
    def failed_verdicts(self) -> List[Verdict]:
        return [v for v in self.verdicts if v.blocking and not v.passed]

    def to_document(self, include_metadata: bool = True) -> Dict[str, Any]:
        """JSON-ready dict; ``include_metadata=False`` gives the reproducible part."""
        exclude = None if include_metadata else {"metadata"}
        return self.model_dump(mode="json", by_alias=True, exclude=exclude)
