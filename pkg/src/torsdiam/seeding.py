"""Counter-based random streams.

Every stream is addressed by ``(seed, *path)`` so that trial ``t`` of an
experiment gets the same generator no matter which worker runs it or in
which order.
"""
from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def stream(seed: int, *path: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed & _MASK64, spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed: int, *path: int) -> int:
    """A 64-bit child seed; used where a plain integer has to be passed along."""
    ss = np.random.SeedSequence(entropy=seed & _MASK64, spawn_key=tuple(int(p) for p in path))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
