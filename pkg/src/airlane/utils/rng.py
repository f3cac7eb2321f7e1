"""Seeded random streams for reproducible batches.

Every consumer derives its own numpy Generator from a tuple of integers
(seed, purpose, index...), so results do not depend on call order or on
how aircraft are scheduled.
"""

__all__ = ["make_rng", "stream_key"]

import zlib

import numpy as np


# -------------------------------------------------
def stream_key(label: str) -> int:
    """Stable 32 bit integer for a text label (crc32, not Python's hash)."""
    return zlib.crc32(label.encode("utf-8"))


# -------------------------------------------------
def make_rng(seed: int, *keys: int | str) -> np.random.Generator:
    entropy = [int(seed) & 0xFFFFFFFF]
    for key in keys:
        entropy.append(stream_key(key) if isinstance(key, str) else int(key))
    return np.random.default_rng(np.random.SeedSequence(entropy))
