"""The very-large-scale neighborhood: lists L1/L2, the residual problem, neighbor merge."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .archive import Archive
from .construct import ratio_r2, sample_simplex
from .instance import Instance
from .solution import Solution
from .subsolvers import Subsolver, solve_exact_bb, solve_memots_lite


@dataclass(frozen=True, eq=False)
class ResidualProblem:
    base: Solution
    candidate_items: np.ndarray  # original indices, L1 then L2
    reduced_capacities: np.ndarray
    sub_instance: Instance


def population_ranges(population, p: int):
    """Per-objective (min, max) over a population of solutions."""
    objs = np.array([s.objectives for s in population], dtype=np.int64).reshape(-1, p)
    if len(objs) == 0:
        raise ValueError("empty population")
    return objs.min(axis=0), objs.max(axis=0)


def adaptive_weight(sol: Solution, population, p: int, rng: np.random.Generator | None = None, ranges=None):
    """Weight vector favouring the objectives on which sol does relatively well.

    For two objectives each raw weight is sol's min-max normalized position in
    the population (0.5 on a zero range), renormalized to sum 1. With more
    objectives the weight is a uniform simplex sample from ``rng``.
    """
    if p != 2:
        if rng is None:
            raise ValueError("a random generator is required for p != 2")
        return sample_simplex(rng, 1, p)[0]
    lo, hi = ranges if ranges is not None else population_ranges(population, p)
    span = (hi - lo).astype(np.float64)
    raw = np.full(p, 0.5)
    nz = span > 0
    raw[nz] = (sol.objectives[nz] - lo[nz]) / span[nz]
    total = raw.sum()
    if total == 0.0:
        return np.full(p, 1.0 / p)
    return raw / total


def r1_ratios(inst: Instance, residual, lam) -> np.ndarray:
    """R1 of every item evaluated at the given residual capacities."""
    lp = inst.profits @ np.asarray(lam, dtype=np.float64)
    denom = (inst.weights / (np.asarray(residual, dtype=np.float64) + 1.0)).sum(axis=1)
    out = np.full(inst.n, np.inf)
    np.divide(lp, denom, out=out, where=denom > 0)
    return out


def build_lists(inst: Instance, sol: Solution, lam, L: int):
    """L1: up to L packed items of smallest R2. L2: up to L unpacked items of largest R1.

    Ties go to the lowest index in both lists.
    """
    if L < 1:
        raise ValueError("L must be at least 1")
    packed = np.flatnonzero(sol.flags)
    free = np.flatnonzero(sol.flags == 0)
    r2 = ratio_r2(inst, lam)[packed]
    l1 = packed[np.lexsort((packed, r2))][:L]
    r1 = r1_ratios(inst, sol.residual, lam)[free]
    l2 = free[np.lexsort((free, -r1))][:L]
    return l1, l2


def build_residual(inst: Instance, sol: Solution, l1, l2) -> ResidualProblem:
    """Sub-instance over L1 + L2 with capacities W_j minus the weight of packed items outside L1."""
    l1 = np.asarray(l1, dtype=np.int64)
    l2 = np.asarray(l2, dtype=np.int64)
    cand = np.concatenate([l1, l2])
    if len(np.unique(cand)) != len(cand):
        raise ValueError("L1 and L2 must be disjoint and duplicate-free")
    if not sol.flags[l1].all() or sol.flags[l2].any():
        raise ValueError("L1 must hold packed items and L2 unpacked items")
    fixed = sol.flags.astype(np.int64)
    fixed[l1] = 0
    reduced = inst.capacities - fixed @ inst.weights
    if (reduced < 0).any():
        raise ValueError("base solution is infeasible")
    sub = Instance(inst.profits[cand], inst.weights[cand], reduced)
    return ResidualProblem(sol, cand, reduced, sub)


def solve_residual(res: ResidualProblem, subsolver: Subsolver, rng: np.random.Generator | None) -> Archive:
    if res.sub_instance.n == 0:
        return Archive(res.sub_instance.p, [Solution(np.zeros(0, dtype=np.uint8), np.zeros(res.sub_instance.p, dtype=np.int64), res.reduced_capacities.copy())])
    if subsolver.kind == "exact":
        return solve_exact_bb(res.sub_instance, node_limit=None)
    return solve_memots_lite(res.sub_instance, subsolver.N, rng)


def merge(inst: Instance, res: ResidualProblem, sub: Solution) -> Solution:
    """Full solution: base flags outside the candidates, sub-solution flags inside."""
    flags = res.base.flags.copy()
    flags[res.candidate_items] = sub.flags
    cand_profit = res.base.flags[res.candidate_items].astype(np.int64) @ res.sub_instance.profits
    objectives = res.base.objectives - cand_profit + sub.objectives
    return Solution(flags, objectives, sub.residual.copy())


def neighbors(
    inst: Instance,
    sol: Solution,
    population,
    L: int,
    subsolver: Subsolver,
    rng: np.random.Generator | None = None,
    ranges=None,
) -> list[Solution]:
    """Neighbors of sol: every (potentially) efficient residual solution merged into sol."""
    if not sol.feasible:
        raise ValueError("neighbors requires a feasible solution")
    lam = adaptive_weight(sol, population, inst.p, rng, ranges)
    l1, l2 = build_lists(inst, sol, lam, L)
    res = build_residual(inst, sol, l1, l2)
    front = solve_residual(res, subsolver, rng)
    return [merge(inst, res, s) for s in front]
