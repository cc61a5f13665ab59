"""
Simulate module: increments, paths and first-passage samples.

Module Structure:
- rng: counter-based RngStream keyed by (seed, stream index)
- increments: exact draws of X_h
- jumps: jump sizes above a truncation level
- paths: EventList / Skeleton paths and CSV dumps
- passage: events and skeleton engines, first-passage sampling
"""

from src.simulate.rng import RngStream, as_generator
from src.simulate.increments import sample_increment, sample_increments, supports_exact_increments
from src.simulate.jumps import jump_rate, sample_jumps
from src.simulate.paths import (
    EventList,
    SamplePath,
    Skeleton,
    path_records,
    simulate_events,
    simulate_skeleton,
    write_path_csv,
)
from src.simulate.passage import (
    Engine,
    EventsEngine,
    FirstPassageSample,
    SkeletonEngine,
    sample_first_passage,
    sample_first_passages,
)

__all__ = [
    "RngStream",
    "as_generator",
    "sample_increment",
    "sample_increments",
    "supports_exact_increments",
    "jump_rate",
    "sample_jumps",
    "EventList",
    "SamplePath",
    "Skeleton",
    "path_records",
    "simulate_events",
    "simulate_skeleton",
    "write_path_csv",
    "Engine",
    "EventsEngine",
    "FirstPassageSample",
    "SkeletonEngine",
    "sample_first_passage",
    "sample_first_passages",
]
