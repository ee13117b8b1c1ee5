import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from augtest import (
    DistOracle,
    FlattenedOracle,
    Flattening,
    Rng,
    SampleBatch,
    build_augmented_flattening,
    build_multiplicative_flattening,
    draw,
    empirical,
    flatten_counts,
    flatten_distribution,
    flatten_sample,
    l2sq_exact,
    load_flattening,
    make_distribution,
    poisson_count,
    save_flattening,
    tv_distance,
    uniform,
)
from augtest.errors import DomainMismatch, IndexOutOfRange, NuOutOfRange, VOutOfRange
from conftest import random_distribution


def batch(counts):
    arr = np.asarray(counts, dtype=np.int64)
    return SampleBatch(len(arr), arr, int(arr.sum()))


# --- bucket-count formulas ----------------------------------------------------


def test_augmented_formula_examples():
    phat = make_distribution([0.3, 0.7])
    f = build_augmented_flattening(phat, batch([2, 0]), 0.1)
    assert f.m[0] == 3 + 2 + 1  # floor(0.3/0.1) + f + 1
    phat = make_distribution([0.0, 1.0])
    f = build_augmented_flattening(phat, batch([0, 0]), 0.5)
    assert f.m[0] == 1  # untouched element

    n = 100
    f = build_augmented_flattening(uniform(n), batch([0] * n), 1.0 / n)
    assert np.all(f.m == 2)
    assert f.size == 2 * n

    with pytest.raises(NuOutOfRange):
        build_augmented_flattening(uniform(2), batch([0, 0]), 0.0)
    with pytest.raises(DomainMismatch):
        build_augmented_flattening(uniform(2), batch([0, 0, 0]), 0.5)


def test_multiplicative_formula_examples():
    phat = make_distribution([0.6, 0.4])
    f = build_multiplicative_flattening(phat, 0.25)
    assert list(f.m) == [3, 2] and f.size == 5

    f = build_multiplicative_flattening(phat, 1.0)
    assert np.all(f.m == 1)  # identity flattening when all phat_i < 1

    with pytest.raises(VOutOfRange):
        build_multiplicative_flattening(phat, 1.5)


def test_multiplicative_exact_values_reduce_l2():
    # with phat = p and v = 1/n the flattened squared norm is <= v * sum(p_i^2/p_i) = 1/n
    rng = Rng(2)
    p = random_distribution(rng, 64, spiky=True)
    f = build_multiplicative_flattening(p, 1.0 / 64)
    assert l2sq_exact(flatten_distribution(f, p)) <= 1.0 / 64 + 1e-12
    assert f.size <= 64 + 64  # n + 1/v


# --- flattened distributions ---------------------------------------------------


def test_flatten_distribution_examples():
    p = make_distribution([1.0])
    flat = flatten_distribution(Flattening(1, np.array([4])), p)
    assert np.allclose(flat.probs, [0.25] * 4)

    p = make_distribution([0.6, 0.4])
    f = Flattening(2, np.array([3, 2]))
    flat = flatten_distribution(f, p)
    assert np.allclose(flat.probs, [0.2] * 5)
    assert l2sq_exact(p) == pytest.approx(0.52)
    assert l2sq_exact(flat) == pytest.approx(0.2)

    identity = Flattening(2, np.array([1, 1]))
    assert np.allclose(flatten_distribution(identity, p).probs, p.probs)


@given(st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_l1_preservation_is_exact(seed):
    rng = Rng(seed)
    n = int(rng.integers(2, 40))
    p = random_distribution(rng, n, spiky=True)
    q = random_distribution(rng, n)
    m = rng.integers(1, 9, size=n)
    f = Flattening(n, m)
    ell1 = np.abs(p.probs - q.probs).sum()
    pf, qf = flatten_distribution(f, p), flatten_distribution(f, q)
    assert np.abs(pf.probs - qf.probs).sum() == pytest.approx(ell1, abs=1e-12)
    assert abs(pf.probs.sum() - 1.0) <= 1e-9


def test_flattening_expected_l2_bound():
    # parity-patterned p at tv = alpha from uniform phat
    n, alpha, s_f = 500, 0.05, 40
    probs = np.empty(n)
    probs[0::2] = (1 + 2 * alpha) / n
    probs[1::2] = (1 - 2 * alpha) / n
    p = make_distribution(probs)
    phat = uniform(n)
    nu = 1.0 / n
    rng = Rng(99)
    reps = 400
    l2s = np.empty(reps)
    growth = np.empty(reps)
    for i in range(reps):
        s_hat = poisson_count(rng, s_f)
        freqs = draw(p, rng, s_hat)
        f = build_augmented_flattening(phat, freqs, nu)
        l2s[i] = l2sq_exact(flatten_distribution(f, p))
        growth[i] = f.size - n
    bound = 2 * alpha / s_f + 4 * nu
    assert l2s.mean() <= bound + 3 * l2s.std(ddof=1) / math.sqrt(reps)
    g_bound = 1.0 / nu + s_f
    assert growth.mean() <= g_bound + 3 * growth.std(ddof=1) / math.sqrt(reps)


# --- sample-level flattening ----------------------------------------------------


def test_flatten_sample_deterministic_and_range(rng):
    f = Flattening(3, np.array([1, 2, 1]))
    assert flatten_sample(f, 1, rng) == 1
    assert flatten_sample(f, 3, rng) == 4
    for _ in range(20):
        assert flatten_sample(f, 2, rng) in (2, 3)
    with pytest.raises(IndexOutOfRange):
        flatten_sample(f, 4, rng)


def test_flatten_sample_buckets_are_uniform(rng):
    f = Flattening(1, np.array([2]))
    hits = np.array([flatten_sample(f, 1, rng) for _ in range(100_000)])
    frac = (hits == 1).mean()
    assert abs(frac - 0.5) < 0.01


def test_flattened_stream_matches_flattened_distribution(rng):
    n = 100
    p = random_distribution(Rng(4), n, spiky=True)
    freqs = draw(p, rng, 200)
    f = build_augmented_flattening(random_distribution(Rng(5), n), freqs, 1.0 / n)
    stream = flatten_counts(f, draw(p, rng, 10**6), rng)
    assert tv_distance(empirical(stream), flatten_distribution(f, p)) <= 0.02


def test_flattened_oracle_wrapper_agrees_with_exact_image(rng):
    p = random_distribution(Rng(6), 30, spiky=True)
    freqs = draw(p, rng, 50)
    f = build_augmented_flattening(p, freqs, 1.0 / 30)
    wrapper = FlattenedOracle(DistOracle(p), f)
    exact = DistOracle(p).flattened(f)
    assert wrapper.n == exact.n == f.size
    a = wrapper.draw_counts(rng, 200_000)
    b = exact.draw_counts(rng, 200_000)
    assert tv_distance(empirical(a), empirical(b)) <= 0.02


# --- serialization ---------------------------------------------------------------


def test_flattening_roundtrip(tmp_path, rng):
    f = Flattening(5, np.array([1, 3, 2, 1, 4]))
    path = tmp_path / "f.flat"
    save_flattening(f, path)
    g = load_flattening(path)
    assert g.n == f.n and np.array_equal(g.m, f.m)
    assert path.read_text().splitlines()[0] == "#augflat v1 n=5"
