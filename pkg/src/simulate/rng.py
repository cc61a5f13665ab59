"""
Counter-based random streams keyed by (seed, stream index).

Every replica of an experiment owns one RngStream; the generator it yields
depends only on the key, never on which worker runs the replica.
"""

from dataclasses import dataclass, field
from typing import Tuple, Union

import numpy as np

MAX_SEED = 2 ** 64


@dataclass(frozen=True)
class RngStream:
    """
    Key of an independent random stream.

    Attributes:
        seed: Master seed, 0 <= seed < 2**64
        index: Stream index (replica number)
        path: Further spawn-key components for nested sub-streams
    """
    seed: int
    index: int = 0
    path: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not 0 <= int(self.seed) < MAX_SEED:
            raise ValueError(f"seed must lie in [0, 2**64), got {self.seed}")
        if int(self.index) < 0:
            raise ValueError(f"stream index must be >= 0, got {self.index}")

    def child(self, k: int) -> "RngStream":
        """Sub-stream k of this stream, independent of its siblings."""
        return RngStream(self.seed, self.index, self.path + (int(k),))

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        seq = np.random.SeedSequence(int(self.seed), spawn_key=(int(self.index),) + self.path)
        return np.random.Generator(np.random.Philox(seq))


RngLike = Union[RngStream, np.random.Generator]


def as_generator(rng: RngLike) -> np.random.Generator:
    """
    Generator for ``rng``.

    A stream key starts a new generator at the beginning of its stream, so two
    calls with the same RngStream reproduce the same draws; pass a Generator
    to continue consuming one stream across calls.
    """
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RngStream):
        return rng.generator()
    raise TypeError(f"expected RngStream or numpy Generator, got {type(rng).__name__}")
