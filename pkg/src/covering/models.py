"""Pydantic models for covering counts."""

from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class CountMethod(str, Enum):
    """How a covering count was produced."""
    PATH_EVENTS = "path-events"
    PATH_SKELETON = "path-skeleton"
    RENEWAL = "renewal"


class CoveringCount(BaseModel):
    """
    Greedy covering of the range of X on [0, t] by intervals of length δ.

    ``n`` is the renewal count max{k: T_k ≤ t}; ``literal`` adds the partial
    last interval when T_N < t.
    """

    n: int = Field(..., ge=0)
    literal: int = Field(..., ge=0)
    renewal_times: np.ndarray
    method: CountMethod
    horizon: float = Field(..., gt=0.0)
    delta: float = Field(..., gt=0.0)

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @model_validator(mode="after")
    def check_counts(self) -> "CoveringCount":
        if self.renewal_times.size != self.n:
            raise ValueError(f"{self.renewal_times.size} renewal times for count {self.n}")
        if self.literal not in (self.n, self.n + 1):
            raise ValueError(f"literal count {self.literal} must be N or N+1 with N={self.n}")
        if self.n > 1 and np.any(np.diff(self.renewal_times) <= 0):
            raise ValueError("renewal times must be strictly increasing")
        if self.n and self.renewal_times[-1] > self.horizon:
            raise ValueError("renewal times must not exceed the horizon")
        return self

    @property
    def max_renewal_time(self) -> float:
        return float(self.renewal_times[-1]) if self.n else 0.0

    def as_record(self) -> dict:
        """Flat record for replica tables."""
        return {
            "delta": self.delta,
            "t": self.horizon,
            "method": self.method.value,
            "n": self.n,
            "literal": self.literal,
            "max_renewal_time": self.max_renewal_time,
        }
