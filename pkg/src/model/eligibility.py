"""
Hypothesis checks for the covering theorems.

The covering results need a subordinator that is not compound Poisson:
either a positive drift or infinitely many jumps on every interval.
"""

import math
from typing import Any, List, Mapping, Optional, Union

from pydantic import BaseModel, Field

from src.core.error_models import DomainError, EligibilityError, SpecValidationError
from src.core.logging import get_logger
from src.model.families import SubordinatorSpec, TruncatedGeneralSpec, parse_spec
from src.model.laplace import has_infinite_activity, tail_integral

logger = get_logger(__name__)

COMPOUND_POISSON_MESSAGE = (
    "covering theorems require the subordinator not being a compound Poisson process "
    "(needs drift > 0 or infinite activity)"
)


class EligibilityReport(BaseModel):
    """Outcome of validate(); failures are carried, never raised."""

    valid: bool
    eligible: bool = False
    infinite_activity: Optional[bool] = None
    integrable: Optional[bool] = None
    integrability_value: Optional[float] = Field(default=None, description="∫₀¹ Π̄(x) dx")
    errors: List[str] = Field(default_factory=list)
    spec: Optional[SubordinatorSpec] = None

    def summary(self) -> str:
        if not self.valid:
            return "invalid: " + "; ".join(self.errors)
        status = "eligible" if self.eligible else "ineligible"
        parts = [status, f"infinite activity={self.infinite_activity}"]
        if self.integrability_value is not None:
            parts.append(f"∫₀¹ Π̄ = {self.integrability_value:.6g}")
        if self.errors:
            parts.append("; ".join(self.errors))
        return ", ".join(parts)


def validate(spec: Union[SubordinatorSpec, Mapping[str, Any]]) -> EligibilityReport:
    """
    Report parameter validity, covering-theorem eligibility and integrability.

    Args:
        spec: A built spec or a raw flat document

    Returns:
        EligibilityReport describing every failure found
    """
    if isinstance(spec, Mapping):
        try:
            spec = parse_spec(spec)
        except SpecValidationError as e:
            return EligibilityReport(valid=False, errors=[str(e)])

    errors: List[str] = []
    try:
        infinite = has_infinite_activity(spec)
    except (DomainError, SpecValidationError) as e:
        return EligibilityReport(valid=False, errors=[f"tail evaluation failed: {e}"], spec=spec)

    integrable: Optional[bool] = True
    value: Optional[float] = None
    if isinstance(spec, TruncatedGeneralSpec):
        try:
            value = tail_integral(spec, 0.0, 1.0)
            integrable = math.isfinite(value)
        except (DomainError, ArithmeticError) as e:
            integrable = False
            errors.append(f"integrability check failed: {e}")
        if not integrable:
            errors.append("∫₀¹ Π̄(x) dx is not finite")

    eligible = bool(integrable) and (spec.drift > 0 or infinite)
    if not (spec.drift > 0 or infinite):
        errors.append(COMPOUND_POISSON_MESSAGE)

    return EligibilityReport(
        valid=bool(integrable),
        eligible=eligible,
        infinite_activity=infinite,
        integrable=integrable,
        integrability_value=value,
        errors=errors,
        spec=spec,
    )


def check_eligible(spec: SubordinatorSpec) -> None:
    """
    Raise when the covering theorems do not apply to ``spec``.

    Raises:
        EligibilityError: For compound Poisson processes without drift or non-integrable tails
    """
    report = validate(spec)
    if not report.eligible:
        logger.debug(f"Ineligible spec {spec.summary()}: {report.errors}")
        raise EligibilityError(f"{spec.summary()}: " + "; ".join(report.errors))
