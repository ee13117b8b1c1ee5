"""Discrete distributions over the 1-based domain [n].

Probability vectors are dense float64 numpy arrays.  Construction validates
non-negativity and normalization (input drift up to 1e-6 is renormalized
away); afterwards the sum-to-one invariant holds to 1e-9.  Sampling uses a
Walker/Vose alias table built once per distribution, so draws cost O(1)
each after O(n) preprocessing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BetaOutOfRange,
    DomainMismatch,
    EmptyBatch,
    FormatError,
    IndexOutOfRange,
    NegativeProbability,
    NotNormalized,
)
from .rng import Rng

INPUT_TOL = 1e-6  # accepted normalization drift on construction
NORM_TOL = 1e-9  # maintained invariant after renormalization


class Distribution:
    """A probability vector over [n]; probs[k] is the mass of element k+1."""

    __slots__ = ("n", "probs", "_alias")

    def __init__(self, probs: np.ndarray, _checked: bool = False):
        probs = np.asarray(probs, dtype=np.float64)
        if probs.ndim != 1 or probs.size == 0:
            raise NotNormalized("probability vector must be a non-empty 1-d array")
        if not _checked:
            if np.any(probs < 0):
                raise NegativeProbability("negative entry in probability vector")
            total = float(probs.sum())
            if abs(total - 1.0) > INPUT_TOL:
                raise NotNormalized(f"probabilities sum to {total!r}, not 1")
            if abs(total - 1.0) > NORM_TOL:  # idempotent: leave clean vectors intact
                probs = probs / total
        self.n = probs.size
        self.probs = probs
        self.probs.setflags(write=False)
        self._alias = None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Distribution)
            and self.n == other.n
            and bool(np.array_equal(self.probs, other.probs))
        )

    def __repr__(self) -> str:
        return f"Distribution(n={self.n})"

    def _alias_table(self):
        """Walker/Vose alias table; built lazily, cached for reuse."""
        if self._alias is None:
            n = self.n
            scaled = self.probs * n
            accept = np.ones(n, dtype=np.float64)
            alias = np.arange(n, dtype=np.int64)
            small = [i for i in range(n) if scaled[i] < 1.0]
            large = [i for i in range(n) if scaled[i] >= 1.0]
            scaled = scaled.copy()
            while small and large:
                s = small.pop()
                g = large.pop()
                accept[s] = scaled[s]
                alias[s] = g
                scaled[g] = scaled[g] - (1.0 - scaled[s])
                if scaled[g] < 1.0:
                    small.append(g)
                else:
                    large.append(g)
            # leftovers are 1.0 up to rounding
            self._alias = (accept, alias)
        return self._alias


@dataclass(frozen=True)
class IndexSet:
    """A sorted set of 1-based domain indices."""

    members: np.ndarray  # int64, sorted, unique
    n: int

    def __post_init__(self):
        members = np.asarray(self.members, dtype=np.int64)
        if members.size:
            if members[0] < 1 or members[-1] > self.n:
                raise IndexOutOfRange("index outside [1..n]")
            if np.any(np.diff(members) <= 0):
                raise IndexOutOfRange("indices must be strictly increasing")
        object.__setattr__(self, "members", members)

    def __len__(self) -> int:
        return int(self.members.size)


@dataclass(frozen=True)
class SampleBatch:
    """Frequency representation of a multiset of samples from [n]."""

    n: int
    counts: np.ndarray  # int64, length n
    total: int

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.size != self.n or np.any(counts < 0):
            raise EmptyBatch("counts must be a non-negative vector of length n")
        if int(counts.sum()) != self.total:
            raise EmptyBatch("total does not match sum of counts")
        object.__setattr__(self, "counts", counts)


def make_distribution(probs) -> Distribution:
    """Validate a probability vector and build a Distribution."""
    return Distribution(np.asarray(probs, dtype=np.float64))


def uniform(n: int) -> Distribution:
    return Distribution(np.full(n, 1.0 / n), _checked=False)


def singleton(n: int, index: int = 1) -> Distribution:
    probs = np.zeros(n)
    probs[index - 1] = 1.0
    return Distribution(probs)


def tv_distance(p: Distribution, q: Distribution) -> float:
    """Total variation distance, computed as half the l1 distance."""
    if p.n != q.n:
        raise DomainMismatch(f"domains differ: {p.n} vs {q.n}")
    return 0.5 * float(np.abs(p.probs - q.probs).sum())


def scheffe_set(phat: Distribution, q: Distribution) -> IndexSet:
    """The witness set {i : phat_i < q_i}, which attains tv(q, phat)."""
    if phat.n != q.n:
        raise DomainMismatch(f"domains differ: {phat.n} vs {q.n}")
    members = np.flatnonzero(phat.probs < q.probs).astype(np.int64) + 1
    return IndexSet(members, phat.n)


def mass(p: Distribution, s: IndexSet) -> float:
    """Probability mass p(S)."""
    if s.members.size and (s.members[0] < 1 or s.members[-1] > p.n):
        raise IndexOutOfRange("index set leaves the distribution's domain")
    return float(p.probs[s.members - 1].sum())


def draw(p: Distribution, rng: Rng, count: int) -> SampleBatch:
    """Draw `count` i.i.d. samples from p via the alias table."""
    if count < 0:
        raise ValueError("count must be non-negative")
    if count == 0:
        return SampleBatch(p.n, np.zeros(p.n, dtype=np.int64), 0)
    accept, alias = p._alias_table()
    kk = rng.integers(0, p.n, size=count)
    u = rng.random(count)
    idx = np.where(u < accept[kk], kk, alias[kk])
    counts = np.bincount(idx, minlength=p.n).astype(np.int64)
    return SampleBatch(p.n, counts, count)


def poisson_count(rng: Rng, lam: float) -> int:
    """A Poisson(lam) variate."""
    if not (lam >= 0 and math.isfinite(lam)):
        raise ValueError("lambda must be finite and non-negative")
    return int(rng.poisson(lam))


def mix(p: Distribution, q: Distribution, beta: float) -> Distribution:
    """The mixture (1 - beta) * p + beta * q."""
    if p.n != q.n:
        raise DomainMismatch(f"domains differ: {p.n} vs {q.n}")
    if not 0.0 <= beta <= 1.0:
        raise BetaOutOfRange(f"beta={beta} outside [0, 1]")
    return Distribution((1.0 - beta) * p.probs + beta * q.probs)


def empirical(batch: SampleBatch) -> Distribution:
    """The empirical distribution counts / total."""
    if batch.total <= 0:
        raise EmptyBatch("cannot normalize an empty sample batch")
    return Distribution(batch.counts / batch.total)


# --- .dist text format -----------------------------------------------------
#
# UTF-8 text.  First line `#augdist v1 n=<n>`, then `<index>\t<probability>`
# with 1-based indices; omitted indices carry probability 0.

_DIST_HEADER = "#augdist v1 n="


def save_dist(d: Distribution, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{_DIST_HEADER}{d.n}\n")
        for idx in np.flatnonzero(d.probs):
            fh.write(f"{idx + 1}\t{d.probs[idx]:.17g}\n")


def load_dist(path) -> Distribution:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if not header.startswith(_DIST_HEADER):
            raise FormatError(f"bad header in {path}: {header!r}")
        n = int(header[len(_DIST_HEADER):])
        probs = np.zeros(n)
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
            probs[idx - 1] = float(fields[1])
    return Distribution(probs)
