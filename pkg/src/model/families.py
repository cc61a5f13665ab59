"""
Pydantic models for subordinator specifications.

A specification is a drift plus one Lévy-measure family. Families form a
discriminated union on the ``family`` key so a flat key-value document such as
``{"family": "stable", "alpha": 0.5, "drift": 0}`` parses directly.
"""

import importlib
from enum import Enum
from functools import lru_cache
from typing import Annotated, Any, Callable, Dict, Literal, Mapping, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, field_validator, model_validator

from src.core.error_models import SpecValidationError


class JumpLaw(str, Enum):
    """Jump-size laws supported by the compound Poisson family."""
    FIXED = "fixed"
    EXPONENTIAL = "exponential"


class _SpecBase(BaseModel):
    """Fields shared by every family."""

    drift: float = Field(default=0.0, ge=0.0, allow_inf_nan=False, description="Linear drift d (space/time)")

    model_config = ConfigDict(frozen=True, extra="forbid")

    def summary(self) -> str:
        """Compact one-line description used in reports."""
        params = self.model_dump(mode="json", exclude={"family"})
        inner = ", ".join(f"{k}={v}" for k, v in params.items())
        return f"{self.family}({inner})"


class DriftOnlySpec(_SpecBase):
    """Pure drift: empty Lévy measure, X_t = d t."""

    family: Literal["drift"] = "drift"

    @model_validator(mode="after")
    def check_positive_drift(self) -> "DriftOnlySpec":
        if self.drift <= 0:
            raise ValueError("drift-only family needs drift > 0")
        return self


class StableSpec(_SpecBase):
    """Positive stable: Φ(λ) = d λ + scale · λ^α."""

    family: Literal["stable"] = "stable"
    alpha: float = Field(..., description="Stability index, strictly inside (0, 1)")
    scale: float = Field(default=1.0, gt=0.0, allow_inf_nan=False)

    @field_validator("alpha")
    @classmethod
    def validate_alpha(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValueError(f"alpha must lie strictly inside (0, 1), got {v}")
        return v


class GammaSpec(_SpecBase):
    """Gamma subordinator: Φ(λ) = d λ + a ln(1 + λ/b)."""

    family: Literal["gamma"] = "gamma"
    a: float = Field(..., gt=0.0, allow_inf_nan=False, description="Shape rate per unit time")
    b: float = Field(..., gt=0.0, allow_inf_nan=False, description="Rate of the jump sizes")


class InverseGaussianSpec(_SpecBase):
    """Inverse Gaussian subordinator: X_1 ~ IG(mean, shape)."""

    family: Literal["inverse_gaussian"] = "inverse_gaussian"
    mean: float = Field(..., gt=0.0, allow_inf_nan=False, description="μ, mean of X_1")
    shape: float = Field(..., gt=0.0, allow_inf_nan=False, description="λ, shape of X_1")


class CompoundPoissonSpec(_SpecBase):
    """Compound Poisson jumps at rate c, optionally with drift."""

    family: Literal["compound_poisson"] = "compound_poisson"
    rate: float = Field(..., gt=0.0, allow_inf_nan=False, description="Jump rate c")
    jump: JumpLaw = Field(default=JumpLaw.FIXED)
    jump_size: Optional[float] = Field(default=None, gt=0.0, description="Size for the fixed law")
    jump_mean: Optional[float] = Field(default=None, gt=0.0, description="Mean for the exponential law")

    @model_validator(mode="after")
    def check_jump_parameters(self) -> "CompoundPoissonSpec":
        if self.jump == JumpLaw.FIXED and self.jump_size is None:
            raise ValueError("jump_size is required for the fixed jump law")
        if self.jump == JumpLaw.EXPONENTIAL and self.jump_mean is None:
            raise ValueError("jump_mean is required for the exponential jump law")
        return self


class TruncatedGeneralSpec(_SpecBase):
    """
    Caller-supplied Lévy tail.

    ``tail_ref`` is an import path ``"package.module:function"``; the function
    is called as ``f(x, **tail_params)`` and must return Π̄(x) for x > 0.
    Jumps below ``truncation`` are never sampled; the events engine clamps its
    ε to at least this value.
    """

    family: Literal["truncated_general"] = "truncated_general"
    tail_ref: str = Field(..., min_length=3)
    tail_params: Dict[str, float] = Field(default_factory=dict)
    truncation: float = Field(..., gt=0.0, allow_inf_nan=False)
    index: Optional[float] = Field(default=None, ge=0.0, le=1.0, description="Declared regular-variation index")
    infinite_activity: Optional[bool] = Field(default=None, description="Declared; detected numerically when None")

    @field_validator("tail_ref")
    @classmethod
    def validate_tail_ref(cls, v: str) -> str:
        if ":" not in v:
            raise ValueError(f"tail_ref must look like 'module:function', got {v!r}")
        return v.strip()

    def tail_function(self) -> Callable[..., float]:
        return resolve_tail(self.tail_ref)

    def tail(self, x: float) -> float:
        return float(self.tail_function()(x, **self.tail_params))


SubordinatorSpec = Annotated[
    Union[
        DriftOnlySpec,
        StableSpec,
        GammaSpec,
        InverseGaussianSpec,
        CompoundPoissonSpec,
        TruncatedGeneralSpec,
    ],
    Field(discriminator="family"),
]

_SPEC_ADAPTER: TypeAdapter = TypeAdapter(SubordinatorSpec)

FAMILY_NAMES = ("drift", "stable", "gamma", "inverse_gaussian", "compound_poisson", "truncated_general")


@lru_cache(maxsize=64)
def resolve_tail(tail_ref: str) -> Callable[..., float]:
    """
    Import the tail function named by ``module:function``.

    Raises:
        SpecValidationError: If the module or attribute cannot be found
    """
    module_name, _, attr = tail_ref.partition(":")
    try:
        module = importlib.import_module(module_name)
        fn = getattr(module, attr)
    except (ImportError, AttributeError) as e:
        raise SpecValidationError(f"cannot resolve tail_ref {tail_ref!r}: {e}") from e
    if not callable(fn):
        raise SpecValidationError(f"tail_ref {tail_ref!r} is not callable")
    return fn


def parse_spec(document: Mapping[str, Any]) -> SubordinatorSpec:
    """
    Build a specification from a flat key-value document.

    Args:
        document: Mapping with a ``family`` key, named parameters and ``drift``

    Returns:
        Validated specification

    Raises:
        SpecValidationError: If the document does not describe a valid spec

    Example:
        >>> parse_spec({"family": "gamma", "a": 1, "b": 1}).family
        'gamma'
    """
    try:
        return _SPEC_ADAPTER.validate_python(dict(document))
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'spec'}: {err['msg']}" for err in e.errors()
        )
        raise SpecValidationError(f"invalid subordinator spec: {problems}") from e


def spec_to_document(spec: SubordinatorSpec) -> Dict[str, Any]:
    """Flat JSON-compatible document for a spec (inverse of parse_spec)."""
    return spec.model_dump(mode="json")
