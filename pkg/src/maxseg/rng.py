"""Deterministic per-trial random substreams."""
from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

# Recorded in experiment metadata so results can be tied to the generator.
RNG_ALGORITHM = "pcg64/splitmix64-substreams"


def splitmix64(x: int) -> int:
    """One splitmix64 mixing step over 64-bit state."""
    x = (x + _GOLDEN) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def substream_key(seed: int, trial: int) -> int:
    """Mix (seed, trial) into a decorrelated 64-bit substream key."""
    return splitmix64(splitmix64(seed & _MASK64) ^ ((trial & _MASK64) * _GOLDEN & _MASK64))


class RngStream:
    """Uniform source for one (seed, trial) substream.

    The same (seed, trial) always replays the same draw sequence within one
    build. Trials can therefore run in any order, or in parallel, without
    changing results.
    """

    def __init__(self, seed: int, trial: int = 0):
        seed = int(seed)
        trial = int(trial)
        if seed < 0 or seed > _MASK64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if trial < 0:
            raise ValueError("trial index must be nonnegative")
        self.seed = seed
        self.trial = trial
        self._gen = np.random.Generator(np.random.PCG64(substream_key(seed, trial)))

    def uniforms(self, size: int) -> np.ndarray:
        """Uniform draws on [0, 1)."""
        return self._gen.random(int(size))

    def normals(self, size: int) -> np.ndarray:
        """Standard normal draws via Box-Muller on uniform pairs."""
        size = int(size)
        m = (size + 1) // 2
        u1 = 1.0 - self._gen.random(m)  # (0, 1], keeps log finite
        u2 = self._gen.random(m)
        r = np.sqrt(-2.0 * np.log(u1))
        z = np.concatenate([r * np.cos(2.0 * np.pi * u2), r * np.sin(2.0 * np.pi * u2)])
        return z[:size]
