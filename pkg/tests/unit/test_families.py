"""
Unit tests for subordinator specifications.
"""

import pytest
from pydantic import ValidationError

from src.core.error_models import SpecValidationError
from src.model.families import (
    FAMILY_NAMES,
    CompoundPoissonSpec,
    DriftOnlySpec,
    GammaSpec,
    StableSpec,
    TruncatedGeneralSpec,
    parse_spec,
    resolve_tail,
    spec_to_document,
)
from src.model.tails import stable_like


class TestSpecValidation:
    """Tests for parameter validation of each family."""

    def test_stable_alpha_bounds(self):
        """Test that alpha outside (0, 1) is rejected."""
        for alpha in (0.0, 1.0, -0.2, 1.5):
            with pytest.raises(ValidationError, match="alpha"):
                StableSpec(alpha=alpha)

    def test_stable_default_scale(self):
        assert StableSpec(alpha=0.3).scale == 1.0

    def test_drift_only_needs_positive_drift(self):
        with pytest.raises(ValidationError, match="drift > 0"):
            DriftOnlySpec(drift=0.0)

    def test_negative_drift_rejected(self):
        with pytest.raises(ValidationError):
            GammaSpec(a=1.0, b=1.0, drift=-1.0)

    def test_gamma_positive_parameters(self):
        with pytest.raises(ValidationError):
            GammaSpec(a=0.0, b=1.0)

    def test_compound_poisson_fixed_needs_size(self):
        with pytest.raises(ValidationError, match="jump_size"):
            CompoundPoissonSpec(rate=1.0, jump="fixed")

    def test_compound_poisson_exponential_needs_mean(self):
        with pytest.raises(ValidationError, match="jump_mean"):
            CompoundPoissonSpec(rate=1.0, jump="exponential")

    def test_unknown_keys_rejected(self):
        with pytest.raises(ValidationError):
            GammaSpec(a=1.0, b=1.0, shape=3.0)

    def test_specs_are_frozen(self):
        spec = GammaSpec(a=1.0, b=2.0)
        with pytest.raises(ValidationError):
            spec.a = 3.0

    def test_summary(self):
        assert StableSpec(alpha=0.5).summary() == "stable(drift=0.0, alpha=0.5, scale=1.0)"


class TestParseSpec:
    """Tests for parse_spec and its inverse."""

    @pytest.mark.parametrize("document,family", [
        ({"family": "drift", "drift": 2.0}, "drift"),
        ({"family": "stable", "alpha": 0.7}, "stable"),
        ({"family": "gamma", "a": 1, "b": 1}, "gamma"),
        ({"family": "inverse_gaussian", "mean": 1, "shape": 2}, "inverse_gaussian"),
        ({"family": "compound_poisson", "rate": 2, "jump": "exponential", "jump_mean": 0.5}, "compound_poisson"),
    ])
    def test_parse_each_family(self, document, family):
        assert parse_spec(document).family == family

    def test_every_family_is_named(self):
        assert set(FAMILY_NAMES) == {
            "drift", "stable", "gamma", "inverse_gaussian", "compound_poisson", "truncated_general",
        }

    def test_unknown_family(self):
        with pytest.raises(SpecValidationError, match="invalid subordinator spec"):
            parse_spec({"family": "cauchy"})

    def test_invalid_parameter_names_key(self):
        with pytest.raises(SpecValidationError, match="alpha"):
            parse_spec({"family": "stable", "alpha": 2.0})

    def test_document_round_trip(self):
        spec = CompoundPoissonSpec(rate=1.0, jump="fixed", jump_size=1.0, drift=1.0)
        assert parse_spec(spec_to_document(spec)) == spec


class TestTruncatedGeneral:
    """Tests for caller-supplied tails."""

    def test_tail_ref_resolved(self):
        spec = TruncatedGeneralSpec(
            tail_ref="src.model.tails:stable_like", tail_params={"alpha": 0.5}, truncation=1e-6
        )
        assert spec.tail(0.25) == pytest.approx(stable_like(0.25, alpha=0.5))

    def test_tail_ref_needs_colon(self):
        with pytest.raises(ValidationError, match="module:function"):
            TruncatedGeneralSpec(tail_ref="src.model.tails.stable_like", truncation=1e-6)

    def test_unresolvable_tail_ref(self):
        with pytest.raises(SpecValidationError, match="cannot resolve"):
            resolve_tail("src.model.tails:no_such_tail")

    def test_truncation_positive(self):
        with pytest.raises(ValidationError):
            TruncatedGeneralSpec(tail_ref="src.model.tails:stable_like", truncation=0.0)
