import numpy as np
import pytest

from conftest import small_instance
from oracles import enumerate_front, vector_set
from momkp import Archive, Instance, ParamSet, default_params, generate_zmkp, pls, solve_exact_bb, two_phase_pls
from momkp.construct import greedy_construct, initial_population


def test_paramset_validation_and_schedule():
    assert ParamSet(L=8, N=None).iterations == 175
    assert ParamSet(N=30).iterations == 30
    for bad in ({"S": 0}, {"L": 0}, {"N": -1}, {"time_limit": -1}, {"subsolver": "x"}):
        with pytest.raises(ValueError):
            ParamSet(**bad)
    p = ParamSet(L=5, seed=3)
    assert ParamSet.from_dict(p.to_dict()) == p


def test_default_params():
    d = default_params(250, 2)
    assert (d.S, d.L, d.N, d.subsolver) == (100, 9, 200, "memots")
    assert (default_params(500, 2).L, default_params(500, 2).N) == (15, 100)
    d3 = default_params(250, 3)
    assert (d3.S, d3.L, d3.N) == (150, 12, 200)
    assert default_params(250, 2, L=4).L == 4


def test_fixpoint_single_pass():
    inst = Instance(np.array([[3, 4]]), np.array([[1]]), np.array([2]))
    P0 = Archive(2, [greedy_construct(inst, [0.5, 0.5])])
    result = pls(inst, P0, ParamSet(L=3, subsolver="exact"))
    assert result.passes == 1 and result.converged
    assert result.front.keys() == P0.keys() == {(3, 4)}


def test_one_item_two_phase():
    inst = Instance(np.array([[5, 1]]), np.array([[2]]), np.array([4]))
    result = two_phase_pls(inst, ParamSet(S=1, L=2, subsolver="exact"))
    assert result.front.keys() == {(5, 1)}


def test_time_limit_zero():
    inst = generate_zmkp(30, 2, 1)
    params = ParamSet(S=20, L=6, subsolver="exact", time_limit=0)
    result = two_phase_pls(inst, params)
    assert not result.converged
    assert result.front.keys() == initial_population(inst, 20, 0).keys()


@pytest.mark.parametrize("seed", range(3))
def test_full_lists_reach_exact_front(seed):
    inst = generate_zmkp(15, 2, 500 + seed)
    result = two_phase_pls(inst, ParamSet(S=20, L=15, subsolver="exact"))
    assert result.front.keys() == vector_set(enumerate_front(inst))


@pytest.mark.parametrize("subsolver, p", [("exact", 2), ("memots", 2), ("memots", 3)])
def test_deterministic(subsolver, p):
    inst = generate_zmkp(30, p, 2)
    params = ParamSet(S=30, L=5, subsolver=subsolver, N=40, seed=11)
    a = two_phase_pls(inst, params)
    b = two_phase_pls(inst, params)
    assert [s.key for s in a.front] == [s.key for s in b.front]
    assert [s.flag_string() for s in a.front] == [s.flag_string() for s in b.front]


def test_front_is_valid_and_improves_on_p0():
    inst = small_instance(np.random.default_rng(8), 25, 2, 2)
    result = two_phase_pls(inst, ParamSet(S=30, L=5, subsolver="exact"))
    P0 = initial_population(inst, 30, 0)
    exact = solve_exact_bb(inst).keys()
    for s in result.front:
        assert s.feasible
        assert any(all(e >= z for e, z in zip(ek, s.key)) for ek in exact)
    for z in P0.keys():
        assert any(all(a >= b for a, b in zip(k, z)) for k in result.front.keys())
    assert result.neighbor_count > 0 and result.passes >= 1


def test_pls_requires_population():
    inst = generate_zmkp(5, 2, 0)
    with pytest.raises(ValueError):
        pls(inst, Archive(2), ParamSet())
