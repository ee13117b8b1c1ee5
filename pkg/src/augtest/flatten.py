"""Randomized domain expansion ("flattening") for l2-norm reduction.

A flattening splits element i into m_i equal-mass buckets.  Splitting both
distributions of a pair through the same flattening preserves their l1
distance while lowering l2 norms, which is what makes the closeness
statistic cheap to separate.  Bucket counts come either from a prediction
plus observed sample frequencies (m_i = floor(phat_i / nu) + f_i + 1) or
from the prediction alone (m_i = floor(phat_i / v) + 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dist import Distribution, SampleBatch
from .errors import DomainMismatch, FormatError, IndexOutOfRange, NuOutOfRange, VOutOfRange
from .rng import Rng

# floor(phat_i / nu) is computed with a tiny upward nudge so values that are
# mathematically integral but land just below (2.9999999999...) floor cleanly.
_FLOOR_NUDGE = 1e-12


@dataclass(frozen=True)
class Flattening:
    """Bucket counts m_i >= 1 per element, with prefix offsets into [N']."""

    n: int
    m: np.ndarray  # int64, all >= 1

    starts: np.ndarray = field(init=False)  # 1-based flat index of bucket (i, 1)
    size: int = field(init=False)  # N' = sum(m)

    def __post_init__(self):
        m = np.asarray(self.m, dtype=np.int64)
        if m.size != self.n or np.any(m < 1):
            raise ValueError("bucket counts must be >= 1 for every element")
        ends = np.cumsum(m)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "starts", ends - m + 1)
        object.__setattr__(self, "size", int(ends[-1]))


def build_augmented_flattening(phat: Distribution, freqs: SampleBatch, nu: float) -> Flattening:
    """Bucket counts m_i = floor(phat_i / nu) + f_i + 1."""
    if phat.n != freqs.n:
        raise DomainMismatch(f"domains differ: {phat.n} vs {freqs.n}")
    if not 0.0 < nu <= 1.0:
        raise NuOutOfRange(f"nu={nu} outside (0, 1]")
    m = np.floor(phat.probs / nu + _FLOOR_NUDGE).astype(np.int64) + freqs.counts + 1
    return Flattening(phat.n, m)


def build_multiplicative_flattening(phat: Distribution, v: float) -> Flattening:
    """Bucket counts m_i = floor(phat_i / v) + 1; grows the domain by <= 1/v."""
    if not 0.0 < v <= 1.0:
        raise VOutOfRange(f"v={v} outside (0, 1]")
    m = np.floor(phat.probs / v + _FLOOR_NUDGE).astype(np.int64) + 1
    return Flattening(phat.n, m)


def flatten_distribution(f: Flattening, p: Distribution) -> Distribution:
    """The flattened distribution with mass p_i / m_i on each bucket of i."""
    if f.n != p.n:
        raise DomainMismatch(f"domains differ: {f.n} vs {p.n}")
    return Distribution(np.repeat(p.probs / f.m, f.m), _checked=True)


def flatten_sample(f: Flattening, i: int, rng: Rng) -> int:
    """Map one sample of element i to a uniformly random bucket (flat index)."""
    if not 1 <= i <= f.n:
        raise IndexOutOfRange(f"element {i} outside [1..{f.n}]")
    return int(f.starts[i - 1] + rng.integers(0, f.m[i - 1]))


def flatten_counts(f: Flattening, batch: SampleBatch, rng: Rng) -> SampleBatch:
    """Map a whole SampleBatch through the flattening (vectorized)."""
    if f.n != batch.n:
        raise DomainMismatch(f"domains differ: {f.n} vs {batch.n}")
    if batch.total == 0:
        return SampleBatch(f.size, np.zeros(f.size, dtype=np.int64), 0)
    elems = np.repeat(np.arange(f.n), batch.counts)
    buckets = (rng.random(batch.total) * f.m[elems]).astype(np.int64)
    flat = f.starts[elems] - 1 + buckets
    counts = np.bincount(flat, minlength=f.size).astype(np.int64)
    return SampleBatch(f.size, counts, batch.total)


def l2sq_exact(p: Distribution) -> float:
    """The squared l2 norm sum(p_i^2)."""
    return float(np.dot(p.probs, p.probs))


# --- .flat text format -----------------------------------------------------

_FLAT_HEADER = "#augflat v1 n="


def save_flattening(f: Flattening, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{_FLAT_HEADER}{f.n}\n")
        for idx in range(f.n):
            fh.write(f"{idx + 1}\t{f.m[idx]}\n")


def load_flattening(path) -> Flattening:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if not header.startswith(_FLAT_HEADER):
            raise FormatError(f"bad header in {path}: {header!r}")
        n = int(header[len(_FLAT_HEADER):])
        m = np.ones(n, dtype=np.int64)
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise FormatError(f"bad line in {path}: {line!r}")
            idx = int(fields[0])
            if not 1 <= idx <= n:
                raise IndexOutOfRange(f"index {idx} outside [1..{n}] in {path}")
            m[idx - 1] = int(fields[1])
    return Flattening(n, m)
