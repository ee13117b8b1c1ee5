"""Sampling oracles: the testers' only access to unknown distributions.

An oracle exposes count-level draws:

  draw_counts(rng, count)  -- frequencies of `count` i.i.d. samples
  draw_poisson(rng, lam)   -- frequencies of Poi(lam) i.i.d. samples

For a known Distribution both are realized exactly at count level
(multinomial, and independent per-element Poisson counts via the standard
Poissonization identity), which is distributionally identical to drawing
samples one at a time but orders of magnitude faster.  `flattened(F)`
returns an oracle for the image distribution under a flattening; the
generic wrapper maps sampled elements to random buckets, while the
distribution-backed oracle uses the exact image distribution directly.
"""

from __future__ import annotations

import numpy as np

from .dist import Distribution, SampleBatch
from .flatten import Flattening, flatten_counts, flatten_distribution
from .rng import Rng


class DistOracle:
    """Sample access to a known Distribution (simulation stand-in)."""

    __slots__ = ("dist",)

    def __init__(self, dist: Distribution):
        self.dist = dist

    @property
    def n(self) -> int:
        return self.dist.n

    def draw_counts(self, rng: Rng, count: int) -> SampleBatch:
        if count == 0:
            return SampleBatch(self.n, np.zeros(self.n, dtype=np.int64), 0)
        counts = rng.multinomial(count, self.dist.probs).astype(np.int64)
        return SampleBatch(self.n, counts, count)

    def draw_poisson(self, rng: Rng, lam: float) -> SampleBatch:
        counts = rng.poisson(lam * self.dist.probs).astype(np.int64)
        return SampleBatch(self.n, counts, int(counts.sum()))

    def flattened(self, f: Flattening) -> "DistOracle":
        return DistOracle(flatten_distribution(f, self.dist))


class FlattenedOracle:
    """Flattening wrapper for oracles that are true black boxes."""

    __slots__ = ("inner", "f")

    def __init__(self, inner, f: Flattening):
        if inner.n != f.n:
            raise ValueError("flattening domain does not match oracle domain")
        self.inner = inner
        self.f = f

    @property
    def n(self) -> int:
        return self.f.size

    def draw_counts(self, rng: Rng, count: int) -> SampleBatch:
        return flatten_counts(self.f, self.inner.draw_counts(rng, count), rng)

    def draw_poisson(self, rng: Rng, lam: float) -> SampleBatch:
        return flatten_counts(self.f, self.inner.draw_poisson(rng, lam), rng)

    def flattened(self, f: Flattening) -> "FlattenedOracle":
        return FlattenedOracle(self, f)


def as_oracle(source) -> "DistOracle":
    """Coerce a Distribution (or pass through an oracle) to oracle form."""
    if isinstance(source, Distribution):
        return DistOracle(source)
    return source


def flatten_oracle(source, f: Flattening):
    """Flatten any oracle, using the exact fast path when available."""
    if hasattr(source, "flattened"):
        return source.flattened(f)
    return FlattenedOracle(source, f)
