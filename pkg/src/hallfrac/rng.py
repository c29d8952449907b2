"""Deterministic 64-bit randomness for every stochastic operation in the lab.

The generator is SplitMix64 (Steele, Lea, Flood; java.util.SplittableRandom).
State advances by the golden-gamma constant and each output is the finalizer
``mix64`` applied to the new state, so the i-th output of a stream seeded with
``s`` is ``mix64(s + i * GOLDEN_GAMMA)`` (1-indexed, mod 2**64).  That closed
form is what makes batch generation with numpy byte-identical to the
sequential generator.

Derived seeds (for retry loops, per-graph corpora, subset sampling) use the
documented stream-split rule

    derive_seed(seed, i) = mix64(mix64(seed) XOR ((i + 1) * GOLDEN_GAMMA))

so that (seed, i) pairs map to well-separated streams on every platform.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer: bijective avalanche mix of one 64-bit word."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Documented stream-split rule; see module docstring."""
    if index < 0:
        raise ValueError("derived stream index must be >= 0")
    return mix64(mix64(seed) ^ (((index + 1) * GOLDEN_GAMMA) & MASK64))


class SplitMix64:
    """Sequential view of the SplitMix64 stream for a given seed."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN_GAMMA) & MASK64
        return mix64(self._state)

    def next_below(self, bound: int) -> int:
        """Uniform value in [0, bound) by rejection on the top range."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % bound


def stream_u64(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """Outputs ``offset+1 .. offset+count`` of the stream, as a uint64 array.

    Exactly equal to ``count`` consecutive ``next_u64`` calls of a
    ``SplitMix64(seed)`` that has already produced ``offset`` values.
    """
    idx = np.arange(offset + 1, offset + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (np.uint64(seed & MASK64) + idx * np.uint64(GOLDEN_GAMMA))
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z = z ^ (z >> np.uint64(31))
    return z
