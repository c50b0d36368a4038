import numpy as np
import pytest

from momkp import Instance


def small_instance(rng, n, p, m, lo=1, hi=30, tight=0.5):
    profits = rng.integers(lo, hi + 1, size=(n, p))
    weights = rng.integers(lo, hi + 1, size=(n, m))
    caps = np.floor(weights.sum(axis=0) * tight).astype(np.int64)
    return Instance(profits, weights, caps)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
