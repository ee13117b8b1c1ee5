"""Seeded random streams with deterministic child-stream derivation.

All randomness in the library flows through an Rng so that any run is
reproducible from a single 64-bit seed.  Parallel or per-trial work derives
independent child streams via seed XOR splitmix64(stream_index), which keeps
a child's identity independent of scheduling order.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One step of the splitmix64 mixing function (public-domain constants)."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (x ^ (x >> 31)) & _MASK64


class Rng:
    """A seeded random stream.

    Wraps a numpy Generator; attribute access falls through to it, so the
    usual `rng.random(k)`, `rng.poisson(lam)`, `rng.multinomial(...)` calls
    work directly.  Same seed + same call sequence => identical outputs.
    """

    __slots__ = ("seed", "_gen")

    def __init__(self, seed: int):
        self.seed = int(seed) & _MASK64
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def child(self, stream_index: int) -> "Rng":
        """Derive an independent child stream for parallel or keyed work."""
        return Rng(self.seed ^ splitmix64(int(stream_index) & _MASK64))

    def __getattr__(self, name: str):
        return getattr(self._gen, name)

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed})"
