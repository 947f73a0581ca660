"""Deterministic per-stream seeds.

A stream is identified by a path of non-negative integers below a master
seed, e.g. ``(point_index, replicate_index)``. Each step folds one integer in
with the SplitMix64 finaliser, so seeds depend only on the path and never on
how work was scheduled across threads.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_1 = 0xBF58476D1CE4E5B9
MIX_2 = 0x94D049BB133111EB

DEFAULT_SEED = 20240917


def mix64(x: int) -> int:
    """SplitMix64 output for state ``x``: add the gamma, then avalanche."""
    z = (x + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * MIX_1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_2) & MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, *path: int) -> int:
    s = mix64(int(master) & MASK64)
    for k in path:
        s = mix64(s ^ (int(k) & MASK64))
    return s


def stream(master: int, *path: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(derive_seed(master, *path)))
