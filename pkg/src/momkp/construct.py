"""Phase 1: weight sets and the R1 greedy construction."""

from __future__ import annotations

import numpy as np

from . import _kernels
from .archive import Archive
from .instance import Instance
from .rng import make_generator
from .solution import Solution, empty_solution

DEFAULT_S = {2: 100, 3: 150}


def default_weight_count(p: int) -> int:
    return DEFAULT_S.get(p, 150)


def uniform_grid(S: int) -> np.ndarray:
    """Biobjective grid (i/(S-1), 1 - i/(S-1)), i = 0..S-1; S = 1 gives (0.5, 0.5)."""
    if S < 1:
        raise ValueError("S must be at least 1")
    if S == 1:
        return np.array([[0.5, 0.5]])
    t = np.arange(S) / (S - 1)
    return np.column_stack([t, 1.0 - t])


def sample_simplex(rng: np.random.Generator, count: int, p: int) -> np.ndarray:
    """Uniform points on the unit simplex: normalized i.i.d. exponentials."""
    e = rng.standard_exponential((count, p))
    return e / e.sum(axis=1, keepdims=True)


def weight_sets(p: int, S: int, seed: int) -> np.ndarray:
    """S weight vectors: the uniform grid for p = 2, seeded simplex samples otherwise."""
    if S < 1:
        raise ValueError("S must be at least 1")
    if p == 2:
        return uniform_grid(S)
    return sample_simplex(make_generator(seed, "weights"), S, p)


def ratio_r1(inst: Instance, item: int, residual, lam) -> float:
    """(lam . c_item) / sum_j w_j,item / (r_j + 1); +inf for a weightless item."""
    lam = np.asarray(lam, dtype=np.float64)
    residual = np.asarray(residual, dtype=np.float64)
    denom = float(np.sum(inst.weights[item] / (residual + 1.0)))
    if denom == 0.0:
        return float("inf")
    return float(lam @ inst.profits[item]) / denom


def ratio_r2(inst: Instance, lam) -> np.ndarray:
    """(lam . c_i) / sum_j w_ij for every item; +inf where the total weight is zero."""
    lp = inst.profits @ np.asarray(lam, dtype=np.float64)
    tw = inst.weights.sum(axis=1)
    out = np.full(inst.n, np.inf)
    np.divide(lp, tw, out=out, where=tw > 0)
    return out


def greedy_construct(inst: Instance, lam, start: Solution | None = None) -> Solution:
    """Pack fitting items by maximal R1 (ties to lowest index) until none fits."""
    sol = start if start is not None else empty_solution(inst)
    flags = sol.flags.copy()
    residual = sol.residual.copy()
    _kernels.greedy_fill(inst.profits, inst.weights, flags, residual, np.asarray(lam, dtype=np.float64))
    return Solution(flags, flags.astype(np.int64) @ inst.profits, residual)


def initial_population(inst: Instance, S: int, seed: int) -> Archive:
    """Nondominated set of the S greedy solutions."""
    arch = Archive(inst.p)
    for lam in weight_sets(inst.p, S, seed):
        arch.add(greedy_construct(inst, lam))
    return arch
