"""Collision-based estimation of the squared l2 norm of a distribution.

Among s i.i.d. samples, the number of colliding pairs X satisfies
E[X] = C(s, 2) * sum(p_i^2), so X / C(s, 2) is an unbiased estimate of the
squared norm.  With s >= 160 sqrt(n) per repetition each estimate lands in
the multiplicative bracket [1/2, 3/2] with probability >= 0.9 (Chebyshev),
and the median of ceil(8 ln(1/delta)) repetitions amplifies that to
1 - delta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dist import SampleBatch
from .rng import Rng


@dataclass(frozen=True)
class L2Estimate:
    """Median-of-repetitions estimate of ||p||_2^2."""

    value: float
    repetitions: int
    samples_per_rep: int

    @property
    def total_samples(self) -> int:
        return self.repetitions * self.samples_per_rep


def collision_count(batch: SampleBatch) -> int:
    """Number of colliding sample pairs, sum_i C(f_i, 2).

    Bounded by C(total, 2), so int64 intermediate arithmetic is safe for
    totals up to ~4e9; the result is returned as a Python int.
    """
    c = batch.counts
    return int((c * (c - 1) // 2).sum())


def estimate_l2sq(source, n: int, delta: float, rng: Rng) -> L2Estimate:
    """Estimate ||p||_2^2 of the oracle's distribution over [n]."""
    if n < 1:
        raise ValueError("domain size must be >= 1")
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must be in (0, 1)")
    reps = math.ceil(8 * math.log(1.0 / delta))
    s = math.ceil(160 * math.sqrt(n))
    pairs = s * (s - 1) // 2
    estimates = np.empty(reps)
    for i in range(reps):
        batch = source.draw_counts(rng, s)
        estimates[i] = collision_count(batch) / pairs
    return L2Estimate(float(np.median(estimates)), reps, s)
