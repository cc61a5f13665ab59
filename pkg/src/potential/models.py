"""Pydantic models for potential estimates and δ-grids."""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class PotentialMethod(str, Enum):
    """Route used to compute U(δ) or U_q(δ)."""
    MONTE_CARLO = "monte-carlo"
    Q_IDENTITY = "q-identity"
    SKELETON_INTEGRAL = "skeleton-integral"
    SERIES = "series"
    ASYMPTOTIC = "asymptotic"
    QUADRATURE = "quadrature"


class PotentialEstimate(BaseModel):
    """One value of U(δ) (q = 0) or U_q(δ) with its error and provenance."""

    delta: float = Field(..., gt=0.0)
    q: float = Field(default=0.0, ge=0.0)
    value: float = Field(..., gt=0.0)
    stderr: float = Field(default=0.0, ge=0.0, description="Statistical or truncation error; 0 when exact")
    method: PotentialMethod
    replicas: Optional[int] = Field(default=None, ge=1)
    grid_step: Optional[float] = Field(default=None, gt=0.0)
    exact: bool = False
    engine: Optional[str] = None
    flags: List[str] = Field(default_factory=list)

    model_config = ConfigDict(frozen=True)

    @property
    def flagged(self) -> bool:
        return bool(self.flags)

    def as_row(self) -> dict:
        """Record for the potential table."""
        return {
            "delta": self.delta,
            "q": self.q,
            "method": self.method.value,
            "value": self.value,
            "stderr": self.stderr,
            "replicas": self.replicas,
            "exact": self.exact,
            "flags": "; ".join(self.flags),
        }


class DeltaGrid(BaseModel):
    """Levels δ_j with U(δ_j) = r^j within ``tolerance``."""

    ratio: float = Field(..., gt=0.0, lt=1.0)
    levels: List[float]
    targets: List[float]
    values: List[float]
    method: str
    tolerance: float = Field(default=1e-3, gt=0.0)
    warnings: List[str] = Field(default_factory=list)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_levels(self) -> "DeltaGrid":
        if not (len(self.levels) == len(self.targets) == len(self.values)):
            raise ValueError("levels, targets and values must have equal length")
        if any(b >= a for a, b in zip(self.levels, self.levels[1:])):
            raise ValueError("grid levels must be strictly decreasing")
        for value, target in zip(self.values, self.targets):
            if abs(value / target - 1.0) > self.tolerance:
                raise ValueError(f"U={value} misses target {target} beyond tolerance {self.tolerance}")
        return self

    def __len__(self) -> int:
        return len(self.levels)
