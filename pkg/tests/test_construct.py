import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import small_instance
from momkp import Instance, dominates, greedy_construct, initial_population, ratio_r1, weight_sets
from momkp.construct import sample_simplex, uniform_grid


def test_grid_examples():
    assert uniform_grid(3).tolist() == [[0, 1], [0.5, 0.5], [1, 0]]
    assert uniform_grid(2).tolist() == [[0, 1], [1, 0]]
    assert uniform_grid(1).tolist() == [[0.5, 0.5]]


def test_simplex_samples():
    lams = weight_sets(3, 1000, seed=5)
    assert lams.shape == (1000, 3)
    assert (lams >= 0).all() and np.allclose(lams.sum(axis=1), 1)
    assert np.all(np.abs(lams.mean(axis=0) - 1 / 3) < 0.02)
    assert np.array_equal(lams, weight_sets(3, 1000, seed=5))
    assert sample_simplex(np.random.default_rng(0), 4, 4).shape == (4, 4)


def test_r1_examples():
    inst = Instance(np.array([[10, 0], [2, 0], [5, 5]]), np.array([[3], [3], [0]]), np.array([5]))
    r = np.array([5])
    assert ratio_r1(inst, 0, r, [1, 0]) == pytest.approx(20)
    assert ratio_r1(inst, 1, r, [1, 0]) == pytest.approx(4)
    assert ratio_r1(inst, 2, r, [1, 0]) == np.inf


def test_greedy_hand_example():
    inst = Instance(np.array([[10, 2], [2, 10]]), np.array([[3], [3]]), np.array([5]))
    a = greedy_construct(inst, [1, 0])
    assert a.flags.tolist() == [1, 0] and a.key == (10, 2)
    b = greedy_construct(inst, [0, 1])
    assert b.flags.tolist() == [0, 1] and b.key == (2, 10)


def test_greedy_zero_capacity():
    inst = Instance(np.ones((4, 2), int), np.ones((4, 2), int), np.zeros(2, int))
    assert greedy_construct(inst, [0.5, 0.5]).flags.sum() == 0


def _r1_oracle(inst, residual, lam, i):
    denom = sum(inst.weights[i, j] / (residual[j] + 1) for j in range(inst.m))
    return np.inf if denom == 0 else float(np.dot(inst.profits[i], lam)) / denom


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_greedy_matches_simulation(seed):
    rng = np.random.default_rng(seed)
    inst = small_instance(rng, 12, 2, 2)
    lam = rng.dirichlet([1, 1])
    x = np.zeros(12, dtype=np.int64)
    res = inst.capacities.copy()
    while True:
        fits = [i for i in range(12) if not x[i] and (inst.weights[i] <= res).all()]
        if not fits:
            break
        best = max(fits, key=lambda i: (_r1_oracle(inst, res, lam, i), -i))
        x[best] = 1
        res = res - inst.weights[best]
    got = greedy_construct(inst, lam)
    assert got.flags.tolist() == x.tolist()


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6), k=st.integers(-3, 3))
def test_greedy_maximal_and_scale_invariant(seed, k):
    rng = np.random.default_rng(seed)
    inst = small_instance(rng, 15, 3, 2)
    lam = rng.dirichlet([1, 1, 1])
    sol = greedy_construct(inst, lam)
    assert sol.feasible
    for i in np.flatnonzero(sol.flags == 0):
        assert (inst.weights[i] > sol.residual).any()
    assert greedy_construct(inst, lam * 2.0**k).flags.tolist() == sol.flags.tolist()


def test_initial_population():
    inst = small_instance(np.random.default_rng(9), 20, 2, 2)
    one = initial_population(inst, 1, 0)
    assert len(one) == 1
    pop = initial_population(inst, 100, 0)
    keys = [s.key for s in pop]
    for s in pop:
        assert s.feasible
    for a in keys:
        assert not any(dominates(b, a) for b in keys)
    three = initial_population(small_instance(np.random.default_rng(9), 20, 3, 3), 50, 4)
    assert three.keys() == initial_population(small_instance(np.random.default_rng(9), 20, 3, 3), 50, 4).keys()
