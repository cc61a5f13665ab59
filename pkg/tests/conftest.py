"""
Pytest Configuration and Shared Fixtures

This file contains pytest configuration and fixtures that are available
to all tests in the test suite.
"""

from pathlib import Path

import pytest

from src.core.config import reset_config
from src.model.families import (
    CompoundPoissonSpec,
    DriftOnlySpec,
    GammaSpec,
    InverseGaussianSpec,
    StableSpec,
    TruncatedGeneralSpec,
)
from src.simulate.rng import RngStream


# ============================================================================
# Paths and Directories
# ============================================================================

@pytest.fixture
def project_root() -> Path:
    """Return the project root directory."""
    return Path(__file__).parent.parent


@pytest.fixture
def configs_dir(project_root: Path) -> Path:
    """Return the example configs directory."""
    return project_root / "configs"


@pytest.fixture
def test_output_dir(tmp_path: Path) -> Path:
    """Create a temporary output directory for tests."""
    output_dir = tmp_path / "test_output"
    output_dir.mkdir(exist_ok=True)
    return output_dir


# ============================================================================
# Environment
# ============================================================================

@pytest.fixture(autouse=True)
def isolated_config(tmp_path: Path, monkeypatch):
    """Point logs and outputs at tmp_path and drop the cached Config around each test."""
    monkeypatch.setenv("SUBCOVER_LOG_DIR", str(tmp_path / "logs"))
    monkeypatch.setenv("SUBCOVER_OUT_DIR", str(tmp_path / "out"))
    monkeypatch.setenv("SUBCOVER_PROGRESS", "0")
    reset_config()
    yield
    reset_config()


# ============================================================================
# Sample Specs
# ============================================================================

@pytest.fixture
def drift_spec() -> DriftOnlySpec:
    """X_t = t."""
    return DriftOnlySpec(drift=1.0)


@pytest.fixture
def stable_spec() -> StableSpec:
    """Positive stable with α = 1/2, Φ(λ) = √λ."""
    return StableSpec(alpha=0.5)


@pytest.fixture
def gamma_spec() -> GammaSpec:
    return GammaSpec(a=1.0, b=1.0)


@pytest.fixture
def ig_spec() -> InverseGaussianSpec:
    return InverseGaussianSpec(mean=1.0, shape=1.0)


@pytest.fixture
def cp_drift_spec() -> CompoundPoissonSpec:
    """Unit jumps at rate 1 plus unit drift: U(0.5) = 1 − e^{−0.5}."""
    return CompoundPoissonSpec(rate=1.0, jump="fixed", jump_size=1.0, drift=1.0)


@pytest.fixture
def cp_no_drift_spec() -> CompoundPoissonSpec:
    return CompoundPoissonSpec(rate=1.0, jump="fixed", jump_size=1.0)


@pytest.fixture
def tempered_spec() -> TruncatedGeneralSpec:
    return TruncatedGeneralSpec(
        tail_ref="src.model.tails:tempered_stable",
        tail_params={"alpha": 0.5, "rate": 1.0},
        truncation=1e-4,
        index=0.5,
    )


@pytest.fixture
def stream() -> RngStream:
    """Fixed experiment stream."""
    return RngStream(12345)




# ============================================================================
# Test Markers
# ============================================================================

def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line("markers", "unit: mark test as a unit test")
    config.addinivalue_line("markers", "integration: mark test as an integration test")
    config.addinivalue_line("markers", "slow: mark test as slow running")
    config.addinivalue_line("markers", "statistical: Monte-Carlo acceptance check with a fixed seed")
