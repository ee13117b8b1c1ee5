"""Generators for the benchmark distribution families.

These are the constructions behind the experiments and the lower-bound
arguments: the heavy-hitter hard instance for closeness testing, the
parity-patterned triple for uniformity testing, and the planted
large-element family for the closeness bound.  Each generator records the
pairwise total-variation facts it was designed around in a metadata map,
and the values are recomputed from the vectors (not trusted) at 1e-9.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dist import Distribution, mix, tv_distance, uniform
from .errors import (
    BetaOutOfRange,
    DomainTooSmall,
    NegativeProbability,
    ParameterOutOfRange,
    ParityAdjustmentFailed,
)
from .rng import Rng


@dataclass(frozen=True)
class InstancePair:
    """A (p, q) pair with a prediction and the TV facts that define it."""

    p: Distribution
    q: Distribution
    phat: Distribution
    metadata: dict


@dataclass(frozen=True)
class UniformityTriple:
    """phat plus the two indistinguishable alternatives for uniformity."""

    phat: Distribution
    p_bullet: Distribution
    p_diamond: Distribution
    metadata: dict


@dataclass(frozen=True)
class ClosenessLbPair:
    """Uniform prediction plus the planted-heavy pair (p_plus, p_minus)."""

    phat: Distribution
    p_plus: Distribution
    p_minus: Distribution
    metadata: dict


def _check_metadata(meta: dict, computed: dict) -> None:
    for key, value in computed.items():
        if abs(meta[key] - value) > 1e-9:
            raise AssertionError(f"metadata {key}={meta[key]} vs recomputed {value}")


def _floor_two_thirds_power(n: int) -> int:
    """Exact floor(n^(2/3)): float pow undershoots at perfect cubes (e.g. 1e6)."""
    m = int(round(n ** (2.0 / 3.0)))
    while m**3 > n * n:
        m -= 1
    while (m + 1) ** 3 <= n * n:
        m += 1
    return m


def hard_closeness_instance(n: int) -> InstancePair:
    """Heavy-hitter hard instance: tv(p, q) = 1/2 hidden behind shared mass.

    p and q agree on the first m = floor(n^(2/3)) elements with mass 1/(2m)
    each; p puts 2/n on (n/2, 3n/4] and q puts 2/n on (3n/4, n].  Floor
    boundaries can leave each light region short of mass 1/2; the residue is
    folded onto element 1 (same rule for both sides).
    """
    if n < 8:
        raise DomainTooSmall("need n >= 8")
    m = _floor_two_thirds_power(n)
    half = n // 2
    three_q = (3 * n) // 4
    if m > half:
        raise DomainTooSmall("heavy block must fit in the first half")

    def build(lo: int, hi: int) -> np.ndarray:
        probs = np.zeros(n)
        probs[:m] = 1.0 / (2 * m)
        probs[lo:hi] = 2.0 / n
        residue = 0.5 - (hi - lo) * 2.0 / n
        probs[0] += residue
        if probs[0] < 0:
            raise NegativeProbability("rounding fold drove element 1 negative")
        return probs

    p = Distribution(build(half, three_q))
    q = Distribution(build(three_q, n))
    meta = {
        "n": float(n),
        "m": float(m),
        "tv_pq": tv_distance(p, q),
        "tv_p_phat": 0.0,
    }
    return InstancePair(p, q, p, meta)


def interpolated_predictor(p: Distribution, beta: float) -> Distribution:
    """Hint of tunable quality: (1 - beta) * p + beta * Unif(n)."""
    if not 0.0 <= beta <= 1.0:
        raise BetaOutOfRange(f"beta={beta} outside [0, 1]")
    return mix(p, uniform(p.n), beta)


def uniformity_lb_triple(
    n: int, eps: float, d: float, alpha: float, rng: Rng
) -> UniformityTriple:
    """Parity-patterned triple for the uniformity bound.

    phat alternates (1 +/- 2d)/n by parity; p_bullet gives pair j the signs
    of an independent Rademacher Z_j at amplitude eps' = min(2 eps, 1/2);
    p_diamond alternates at amplitude 2(d - alpha') with alpha' = alpha / 2.
    """
    if n < 2 or n % 2 != 0:
        raise ParameterOutOfRange("n must be even and >= 2")
    if not 0.0 < eps < 0.5:
        raise ParameterOutOfRange("eps must be in (0, 1/2): eps' in (eps, 1/2] must exist")
    if not 0.0 < d <= 0.5:
        raise ParameterOutOfRange("d must be in (0, 1/2]")
    if not 0.0 <= alpha < d:
        raise ParameterOutOfRange("alpha must be in [0, d)")
    eps_prime = min(2.0 * eps, 0.5)
    alpha_prime = alpha / 2.0

    def parity_pattern(amplitude: float) -> np.ndarray:
        probs = np.empty(n)
        probs[1::2] = (1.0 + 2.0 * amplitude) / n  # even 1-based indices
        probs[0::2] = (1.0 - 2.0 * amplitude) / n
        return probs

    phat = Distribution(parity_pattern(d))
    p_diamond = Distribution(parity_pattern(d - alpha_prime))
    z = np.where(rng.random(n // 2) < 0.5, -1.0, 1.0)
    bullet = np.empty(n)
    bullet[1::2] = (1.0 + 2.0 * z * eps_prime) / n
    bullet[0::2] = (1.0 - 2.0 * z * eps_prime) / n
    p_bullet = Distribution(bullet)

    un = uniform(n)
    meta = {
        "n": float(n),
        "d": d,
        "eps_prime": eps_prime,
        "alpha_prime": alpha_prime,
        "tv_phat_uniform": tv_distance(phat, un),
        "tv_bullet_uniform": tv_distance(p_bullet, un),
        "tv_diamond_phat": tv_distance(p_diamond, phat),
    }
    _check_metadata(
        meta,
        {
            "tv_phat_uniform": d,
            "tv_bullet_uniform": eps_prime,
            "tv_diamond_phat": alpha_prime,
        },
    )
    return UniformityTriple(phat, p_bullet, p_diamond, meta)


def closeness_lb_instance(n: int, eps: float, alpha: float, rng: Rng) -> ClosenessLbPair:
    """Planted large-element family: phat = uniform, tv(p_plus, phat) = alpha.

    ell = floor(n^(2/3) alpha^(4/3) / (2 eps^(4/3))), reduced by one if its
    parity differs from n's so the small-element block splits evenly.  The
    ell large elements carry 1/n + alpha/ell each; small elements carry
    sp = 1/n - alpha/(n - ell), and p_minus tilts the two halves of the
    small block by (1 +/- 6 eps).
    """
    if not 0.0 < eps < 1.0 / 6.0:
        raise ParameterOutOfRange("eps must be in (0, 1/6)")
    if not 0.0 < alpha < eps:
        raise ParameterOutOfRange("alpha must be in (0, eps)")
    raw = int(math.floor(n ** (2.0 / 3.0) * alpha ** (4.0 / 3.0) / (2.0 * eps ** (4.0 / 3.0))))
    ell = raw - (1 if (raw % 2) != (n % 2) else 0)
    if ell < 1:
        raise ParityAdjustmentFailed(f"ell={ell} after parity adjustment")
    if ell >= n / 2:
        raise ParameterOutOfRange(f"ell={ell} must stay below n/2")

    lp = 1.0 / n + alpha / ell
    sp = 1.0 / n - alpha / (n - ell)
    if sp < 0:
        raise ParameterOutOfRange("small-element mass went negative")
    eps_tilde = 6.0 * eps

    perm = rng.permutation(n)
    large = perm[:ell]
    small = perm[ell:]
    half = (n - ell) // 2
    small_1, small_2 = small[:half], small[half:]

    plus = np.full(n, sp)
    plus[large] = lp
    minus = np.full(n, sp)
    minus[large] = lp
    minus[small_1] = (1.0 + eps_tilde) * sp
    minus[small_2] = (1.0 - eps_tilde) * sp
    p_plus = Distribution(plus)
    p_minus = Distribution(minus)
    phat = uniform(n)

    meta = {
        "n": float(n),
        "ell": float(ell),
        "eps_tilde": eps_tilde,
        "tv_plus_uniform": tv_distance(p_plus, phat),
        "tv_plus_minus": tv_distance(p_plus, p_minus),
    }
    _check_metadata(
        meta,
        {
            "tv_plus_uniform": alpha,
            "tv_plus_minus": (eps_tilde / 2.0) * ((n - ell) / n - alpha),
        },
    )
    if meta["tv_plus_minus"] <= eps:
        raise ParameterOutOfRange("construction failed to separate p_plus and p_minus")
    return ClosenessLbPair(phat, p_plus, p_minus, meta)


def perturb_heavy(
    q: Distribution, heavy: np.ndarray, k_frac: float = 0.12, removal: float = 0.03
) -> Distribution:
    """Degrade a hint by shaving mass off a few heavy elements.

    Removes a `removal` fraction of mass from the first k = floor(k_frac * h)
    of the given heavy indices (1-based) and piles it onto the remaining
    heavy elements, so the result is a distribution at TV distance
    removal * (shaved mass) from q -- small in TV yet point-wise
    inconsistent on a constant fraction of the heavy mass.
    """
    heavy = np.asarray(heavy, dtype=np.int64)
    k = max(1, int(math.floor(k_frac * heavy.size)))
    if k >= heavy.size:
        raise ParameterOutOfRange("perturbation must leave some heavy elements intact")
    shaved = heavy[:k] - 1
    boosted = heavy[k:] - 1
    probs = q.probs.copy()
    removed = removal * float(probs[shaved].sum())
    probs[shaved] *= 1.0 - removal
    probs[boosted] += removed * probs[boosted] / float(probs[boosted].sum())
    return Distribution(probs)
