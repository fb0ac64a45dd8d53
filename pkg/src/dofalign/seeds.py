"""Deterministic seed derivation for reproducible Monte Carlo runs.

Every random draw in the package comes from a stream keyed by
derive_key(master, *path), where the path names the consumer (grid point
index, trial index, user, ...).  Streams are therefore pure functions of
(master seed, path) and results do not depend on execution order.
"""

from __future__ import annotations

import hashlib

import numpy as np

_U64 = 1 << 64


def derive_key(master: int, *path: int) -> int:
    """64-bit key from SHA-256 over (master, path) as little-endian u64s."""
    h = hashlib.sha256()
    h.update((master % _U64).to_bytes(8, "little"))
    for p in path:
        h.update((p % _U64).to_bytes(8, "little"))
    return int.from_bytes(h.digest()[:8], "little")


def rng_for(master: int, *path: int) -> np.random.Generator:
    """Counter-based generator for the stream named by (master, path)."""
    return np.random.Generator(np.random.Philox(key=derive_key(master, *path)))
