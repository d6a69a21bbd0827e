"""
Deterministic seeded random streams
"""
from dataclasses import dataclass
from typing import List

import numpy as np


@dataclass(frozen=True)
class RngStream:
    """(seed, stream_id) names a reproducible sample sequence.

    Streams are spawned children of one SeedSequence, so distinct stream ids
    give statistically independent generators.
    """
    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        sequence = np.random.SeedSequence(int(self.seed), spawn_key=(int(self.stream_id),))
        return np.random.Generator(np.random.PCG64(sequence))

    def child(self, stream_id: int) -> "RngStream":
        return RngStream(seed=self.seed, stream_id=stream_id)


def streams(seed: int, count: int, start: int = 0) -> List[RngStream]:
    """Consecutive streams for repetitions or trials"""
    return [RngStream(seed=seed, stream_id=start + i) for i in range(count)]
