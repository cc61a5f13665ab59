"""
Run configuration files.

A run configuration is a JSON5 document: flat keys for the experiment and
its parameters, with one nesting level for the spec, the engine and the
mesh list. Example::

    {
      experiment: "theorem1",
      spec: {family: "stable", alpha: 0.5},   // or "specs/stable.json5"
      t: 1.0,
      deltas: {kind: "log-spaced", min: 1e-4, max: 1e-2, per_decade: 1},
      engine: {kind: "events", epsilon_ratio: 1e-3},
      replicas: 1000,
    }

Every default is written back into the report, so runs are self-describing.
"""

import math
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Union

import json5
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.core.config import get_config
from src.core.error_models import ConfigError, SpecValidationError
from src.core.logging import get_logger
from src.model.families import SubordinatorSpec, parse_spec
from src.potential.grid import solve_delta_grid
from src.potential.models import DeltaGrid
from src.simulate.passage import Engine, EventsEngine
from src.utils.numeric import log_spaced

logger = get_logger(__name__)


class DeltaList(BaseModel):
    kind: Literal["list"] = "list"
    values: List[float] = Field(..., min_length=1)

    model_config = ConfigDict(extra="forbid")

    @field_validator("values")
    @classmethod
    def validate_values(cls, v: List[float]) -> List[float]:
        if min(v) <= 0:
            raise ValueError("deltas must be positive")
        v = sorted(set(v), reverse=True)
        return v


class LogSpacedDeltas(BaseModel):
    kind: Literal["log-spaced"] = "log-spaced"
    min: float = Field(..., gt=0.0)
    max: float = Field(..., gt=0.0)
    per_decade: int = Field(default=1, ge=1)

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def check_range(self) -> "LogSpacedDeltas":
        if self.min > self.max:
            raise ValueError("min must not exceed max")
        return self


class GeometricDeltas(BaseModel):
    """Levels solving U(δ_j) = r^j."""

    kind: Literal["geometric"] = "geometric"
    r: float = Field(..., gt=0.0, lt=1.0)
    j_max: int = Field(..., ge=1)
    method: str = "best"
    tolerance: float = Field(default=1e-3, gt=0.0)

    model_config = ConfigDict(extra="forbid")


DeltaSpec = Annotated[Union[DeltaList, LogSpacedDeltas, GeometricDeltas], Field(discriminator="kind")]


class RunConfig(BaseModel):
    """Validated run configuration; experiment-specific keys are optional."""

    experiment: str
    spec: Union[Dict[str, Any], str]
    t: float = Field(default=1.0, gt=0.0)
    deltas: DeltaSpec = Field(default_factory=lambda: DeltaList(values=[1e-2, 1e-3]))
    engine: Engine = Field(default_factory=EventsEngine)
    replicas: int = Field(default=1000, ge=1)
    seed: int = Field(default_factory=lambda: get_config().default_seed, ge=0)
    workers: int = Field(default_factory=lambda: get_config().workers, ge=1)
    tolerance: Optional[float] = Field(default=None, gt=0.0)
    counting: Literal["path", "renewal"] = "path"
    potential_replicas: int = Field(default=20_000, ge=1)
    out_dir: Optional[str] = None

    # experiment-specific
    c_a: float = Field(default=math.e, gt=0.0)
    pieces: List[int] = Field(default_factory=lambda: [2, 4, 8])
    q: List[float] = Field(default_factory=lambda: [0.1, 1.0, 10.0])
    x: Optional[List[float]] = None
    mc_check_replicas: int = Field(default=0, ge=0)
    single_path: bool = False
    paths: int = Field(default=50, ge=1)
    dump: int = Field(default=10, ge=0)

    # directory of the config file; spec file references resolve against it
    base_dir: Path = Field(default=Path("."), exclude=True)

    model_config = ConfigDict(extra="forbid")

    @field_validator("deltas", mode="before")
    @classmethod
    def coerce_deltas(cls, v: Any) -> Any:
        """A bare number or list is an explicit mesh list."""
        if isinstance(v, (int, float)):
            return {"kind": "list", "values": [v]}
        if isinstance(v, list):
            return {"kind": "list", "values": v}
        return v

    @field_validator("experiment")
    @classmethod
    def validate_experiment(cls, v: str) -> str:
        from src.cli.experiments import EXPERIMENTS

        v = v.strip().lower()
        if v not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {v!r}; choose one of {', '.join(EXPERIMENTS)}")
        return v

    @field_validator("pieces")
    @classmethod
    def validate_pieces(cls, v: List[int]) -> List[int]:
        if not v or min(v) < 2:
            raise ValueError("pieces must be integers >= 2")
        return v

    @field_validator("q")
    @classmethod
    def validate_q(cls, v: List[float]) -> List[float]:
        if not v or min(v) <= 0:
            raise ValueError("q values must be positive")
        return v

    def build_spec(self) -> SubordinatorSpec:
        """The spec, loading it from a JSON5 file when given as a path."""
        document = self.spec
        if isinstance(document, str):
            path = self.base_dir / document
            if not path.exists():
                raise ConfigError("spec", f"spec file not found: {path}")
            document = load_document(path, key="spec")
        try:
            return parse_spec(document)
        except SpecValidationError as e:
            raise ConfigError("spec", str(e)) from e

    def resolve_deltas(self, spec: SubordinatorSpec) -> Union[List[float], DeltaGrid]:
        """Strictly decreasing meshes, or the solved geometric grid."""
        d = self.deltas
        if isinstance(d, DeltaList):
            return list(d.values)
        if isinstance(d, LogSpacedDeltas):
            return log_spaced(d.min, d.max, d.per_decade)
        grid = solve_delta_grid(spec, d.r, d.j_max, method=d.method, tolerance=d.tolerance)
        if not grid.levels:
            raise ConfigError("deltas", f"no level of U(delta) = {d.r}^j could be solved")
        return grid

    def single_delta(self, spec: SubordinatorSpec) -> float:
        """The one mesh of experiments that run at a fixed δ."""
        deltas = self.resolve_deltas(spec)
        levels = deltas.levels if isinstance(deltas, DeltaGrid) else deltas
        if len(levels) != 1:
            raise ConfigError("deltas", f"experiment {self.experiment} takes a single delta, got {len(levels)}")
        return levels[0]

    def as_document(self) -> Dict[str, Any]:
        """Every key with its effective value, for the report."""
        return self.model_dump(mode="json")


def load_document(path: Path, key: str = "config") -> Dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as f:
            document = json5.load(f)
    except OSError as e:
        raise ConfigError(key, f"cannot read {path}: {e}") from e
    except ValueError as e:
        raise ConfigError(key, f"{path} is not valid JSON5: {e}") from e
    if not isinstance(document, dict):
        raise ConfigError(key, f"{path} must hold a key-value document")
    return document


def _first_error_key(exc: ValidationError) -> str:
    errors = exc.errors()
    if not errors or not errors[0].get("loc"):
        return "config"
    return ".".join(str(part) for part in errors[0]["loc"])


def build_run_config(document: Dict[str, Any], base_dir: Path = Path("."), **overrides: Any) -> RunConfig:
    """
    Validate a configuration document, applying non-None overrides first.

    Raises:
        ConfigError: Naming the first offending key
    """
    merged = dict(document)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    merged["base_dir"] = base_dir
    try:
        return RunConfig(**merged)
    except ValidationError as e:
        key = _first_error_key(e)
        message = e.errors()[0].get("msg", str(e))
        raise ConfigError(key, message) from e


def load_run_config(path: Union[str, Path], **overrides: Any) -> RunConfig:
    """Read, merge overrides (seed, workers, out_dir) and validate a config file."""
    path = Path(path)
    if not path.exists():
        raise ConfigError("config", f"config file not found: {path}")
    config = build_run_config(load_document(path), base_dir=path.parent, **overrides)
    logger.debug(f"Loaded run config {path}: experiment={config.experiment}")
    return config
