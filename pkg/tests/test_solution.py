import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import small_instance
from momkp import Instance, evaluate, greedy_repair, is_feasible
from momkp.construct import ratio_r2
from momkp.solution import Solution, empty_solution


def test_empty_flags():
    inst = small_instance(np.random.default_rng(0), 6, 2, 2)
    sol = evaluate(inst, np.zeros(6))
    assert sol.objectives.tolist() == [0, 0]
    assert sol.residual.tolist() == inst.capacities.tolist()
    assert empty_solution(inst).key == (0, 0)


def test_single_item():
    inst = small_instance(np.random.default_rng(1), 6, 3, 2)
    flags = np.zeros(6)
    flags[4] = 1
    assert evaluate(inst, flags).objectives.tolist() == inst.profits[4].tolist()


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_evaluate_matches_loop(seed):
    rng = np.random.default_rng(seed)
    inst = small_instance(rng, 5, 2, 3)
    flags = rng.integers(0, 2, 5)
    sol = evaluate(inst, flags)
    for k in range(inst.p):
        assert sol.objectives[k] == sum(int(inst.profits[i, k]) for i in range(5) if flags[i])
    for j in range(inst.m):
        used = sum(int(inst.weights[i, j]) for i in range(5) if flags[i])
        assert sol.residual[j] == inst.capacities[j] - used


def test_evaluate_shape_error():
    inst = small_instance(np.random.default_rng(0), 4, 2, 1)
    with pytest.raises(ValueError):
        evaluate(inst, np.zeros(5))


def test_feasibility_boundaries():
    z = np.zeros(2, dtype=np.int64)
    assert is_feasible(Solution(np.zeros(2, np.uint8), z, np.array([0, 0])))
    assert not is_feasible(Solution(np.zeros(2, np.uint8), z, np.array([-1, 3])))


def test_with_without_item():
    inst = small_instance(np.random.default_rng(2), 5, 2, 2)
    sol = empty_solution(inst).with_item(inst, 3)
    assert sol.key == tuple(inst.profits[3])
    assert sol.without_item(inst, 3).key == (0, 0)
    with pytest.raises(ValueError):
        sol.with_item(inst, 3)


def test_repair_feasible_unchanged():
    inst = small_instance(np.random.default_rng(3), 8, 2, 2)
    flags = np.zeros(8, dtype=np.uint8)
    flags[0] = 1
    if evaluate(inst, flags).feasible:
        assert greedy_repair(inst, flags, [0.5, 0.5]).flags.tolist() == flags.tolist()


def test_repair_single_removal():
    # W=3, both items packed (weights 2,2), R2 values 1.0 and 2.0
    inst = Instance(np.array([[2, 0], [4, 0]]), np.array([[2], [2]]), np.array([3]))
    sol = greedy_repair(inst, np.array([1, 1]), [1.0, 0.0])
    assert sol.flags.tolist() == [0, 1]
    assert sol.feasible


def test_repair_keeps_weightless_items():
    inst = Instance(np.array([[5, 5], [1, 1], [9, 9]]), np.array([[0], [4], [4]]), np.array([3]))
    sol = greedy_repair(inst, np.array([1, 1, 1]), [0.5, 0.5])
    assert sol.flags.tolist() == [1, 0, 0]


def _repair_oracle(inst, flags, lam):
    x = [int(f) for f in flags]
    removed = []
    while True:
        used = [sum(inst.weights[i, j] for i in range(inst.n) if x[i]) for j in range(inst.m)]
        if all(u <= c for u, c in zip(used, inst.capacities)):
            return x, removed
        best, best_r = None, None
        for i in range(inst.n):
            tw = int(inst.weights[i].sum())
            if not x[i] or tw == 0:
                continue
            r = float(np.dot(inst.profits[i], lam)) / tw
            if best is None or r < best_r:
                best, best_r = i, r
        x[best] = 0
        removed.append(best)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_repair_matches_step_oracle(seed):
    rng = np.random.default_rng(seed)
    inst = small_instance(rng, 10, 2, 2, tight=0.3)
    flags = rng.integers(0, 2, 10)
    lam = rng.dirichlet([1, 1])
    expected, _ = _repair_oracle(inst, flags, lam)
    got = greedy_repair(inst, flags, lam)
    assert got.flags.tolist() == expected
    assert got.feasible


def test_r2_values():
    inst = Instance(np.array([[3, 0], [4, 0]]), np.array([[1, 2], [1, 1]]), np.array([5, 5]))
    assert ratio_r2(inst, [1.0, 0.0]).tolist() == [1.0, 2.0]
