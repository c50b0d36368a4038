import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import d1d2_brute, eps_brute, hv_monte_carlo, pareto_front, r_brute
from momkp import ReferenceData, assemble_report, d1_d2, eps_indicator, hypervolume2, proportion_nondominated, r_measure
from momkp.indicators import r_weights


def random_front(rng, size, p=2, hi=100):
    return pareto_front(rng.integers(1, hi, size=(size, p)))


def test_hv_examples():
    assert hypervolume2([(2, 1), (1, 2)]) == 3
    assert hypervolume2([(2, 1), (1, 2), (1, 1)]) == 3
    assert hypervolume2([]) == 0
    with pytest.raises(ValueError):
        hypervolume2([(1, 2, 3)])
    with pytest.raises(ValueError):
        hypervolume2([(1, 1)], ref_point=(2, 0))


def test_hv_monte_carlo():
    rng = np.random.default_rng(0)
    for _ in range(3):
        front = rng.integers(1, 100, size=(50, 2))
        est, se = hv_monte_carlo(front, np.zeros(2), 10**6, rng)
        assert abs(hypervolume2(front) - est) <= 3 * se


def test_eps_examples():
    assert eps_indicator([(2, 2)], [(4, 2)]) == 2
    A = [(3, 5), (5, 3)]
    assert eps_indicator(A, A) == 1
    with pytest.raises(ValueError):
        eps_indicator([(0, 1)], [(1, 1)])
    with pytest.raises(ValueError):
        eps_indicator([], [(1, 1)])


def test_r_examples():
    lam = [(0, 1), (0.5, 0.5), (1, 0)]
    assert r_measure([(0, 0)], (1, 1), lam) == pytest.approx(5 / 6)
    assert r_measure([(4, 4)], (4, 4), lam) == 0


def test_r_weights():
    assert len(r_weights(2, 201)) == 201
    w3 = r_weights(3, 50)
    assert w3.shape == (50, 3) and (w3 >= 0).all() and np.allclose(w3.sum(axis=1), 1)
    assert np.array_equal(w3, r_weights(3, 50))


def test_d1d2_examples():
    assert d1_d2([(3, 4)], [(0, 0)]) == (5, 5)
    A = [(1, 2), (3, 1)]
    assert d1_d2(A, A) == (0, 0)


def test_pyn_examples():
    Z = [(i, 100 - i) for i in range(100)]
    assert proportion_nondominated(Z + [(500, 500)], Z) == 1
    assert proportion_nondominated(Z[:31], Z) == pytest.approx(0.31)


@pytest.mark.parametrize("p", [2, 3])
def test_brute_force_oracles(p):
    rng = np.random.default_rng(p)
    weights = r_weights(p, 25)
    for _ in range(25):
        A = random_front(rng, 30, p)
        B = random_front(rng, 30, p)
        utopian = np.maximum(A.max(axis=0), B.max(axis=0)) * 1.01
        assert eps_indicator(A, B) == eps_brute(A, B)
        assert r_measure(A, utopian, weights) == r_brute(A, utopian, weights)
        assert d1_d2(A, B) == d1d2_brute(A, B)
        hits = len({tuple(a) for a in A} & {tuple(b) for b in B})
        assert proportion_nondominated(A, B) == hits / len(B)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_monotone_and_permutation_invariant(seed):
    rng = np.random.default_rng(seed)
    ref = random_front(rng, 40)
    big = rng.integers(1, 100, size=(30, 2))
    small = big[: max(1, len(big) // 2)]
    util = ref.max(axis=0) * 1.01
    w = r_weights(2, 51)
    assert hypervolume2(big) >= hypervolume2(small)
    assert eps_indicator(big, ref) <= eps_indicator(small, ref)
    assert r_measure(big, util, w) <= r_measure(small, util, w)
    assert all(x <= y for x, y in zip(d1_d2(big, ref), d1_d2(small, ref)))
    assert proportion_nondominated(big, ref) >= proportion_nondominated(small, ref)
    perm = big[rng.permutation(len(big))]
    assert hypervolume2(perm) == hypervolume2(big)
    assert eps_indicator(perm, ref) == eps_indicator(big, ref)
    assert r_measure(perm, util, w) == r_measure(big, util, w)
    assert proportion_nondominated(perm, ref) == proportion_nondominated(big, ref)
    assert d1_d2(perm, ref) == d1_d2(big, ref)


def test_dominated_point_invariance():
    rng = np.random.default_rng(3)
    A = random_front(rng, 20)
    ref = random_front(rng, 20)
    util = ref.max(axis=0) * 1.01
    w = r_weights(2, 201)
    dominated = np.vstack([A, A.min(axis=0)])
    assert hypervolume2(dominated) == hypervolume2(A)
    assert eps_indicator(dominated, ref) == eps_indicator(A, ref)
    assert r_measure(dominated, util, w) == r_measure(A, util, w)
    assert proportion_nondominated(dominated, ref) == proportion_nondominated(A, ref)


def test_report():
    ref = np.array([[10, 2], [6, 6], [2, 10]])
    rep = assemble_report(ref, ReferenceData.from_front(ref))
    assert (rep.eps, rep.d1, rep.d2, rep.p_yn, rep.pe_count) == (1, 0, 0, 1, 3)
    d = rep.to_dict()
    assert set(d) == {"hypervolume", "eps", "r", "d1", "d2", "p_yn", "pe_count"}
    ref3 = np.array([[10, 2, 3], [6, 6, 6]])
    rep3 = assemble_report(ref3[:1], ReferenceData.from_front(ref3))
    assert "hypervolume" not in rep3.to_dict()
    assert rep3.d1 <= rep3.d2
    with pytest.raises(ValueError):
        ReferenceData.from_front(ref, utopian=(1, 1))


def test_reference_defaults():
    ref = ReferenceData.from_front(np.array([[100, 50]]))
    assert ref.utopian_point.tolist() == [101.0, 50.5]
    assert ref.weight_count == 201
    assert ReferenceData.from_front(np.array([[1, 2, 3]])).weight_count == 50
