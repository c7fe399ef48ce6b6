"""Seeded random streams.

Every stochastic routine takes an explicit 64-bit seed plus a tuple of integer
keys (ensemble index, grid index, ...). Streams are Philox generators built
from ``SeedSequence(seed, spawn_key=keys)``, so a given key always yields the
same draws no matter how work is split across threads or processes.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1


def stream(seed: int, *keys: int) -> np.random.Generator:
    if seed < 0 or seed > MASK64:
        raise ValueError(f"seed must fit in 64 bits, got {seed}")
    ss = np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.Philox(ss))
