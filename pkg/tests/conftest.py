import numpy as np
import pytest

from augtest import Distribution, Rng


def random_distribution(rng: Rng, n: int, spiky: bool = False) -> Distribution:
    """A random point on the simplex; `spiky` biases toward heavy elements."""
    raw = rng.random(n) if not spiky else rng.random(n) ** 4
    raw = raw + 1e-12
    return Distribution(raw / raw.sum())


@pytest.fixture
def rng():
    return Rng(20240811)
