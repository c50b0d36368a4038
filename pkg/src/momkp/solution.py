"""Solutions: inclusion flags with cached objective values and residual capacities."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .instance import Instance


@dataclass(eq=False)
class Solution:
    flags: np.ndarray  # (n,) uint8
    objectives: np.ndarray  # (p,) int64
    residual: np.ndarray  # (m,) int64, may be negative

    @property
    def key(self) -> tuple:
        """Objective vector as a hashable tuple of ints."""
        return tuple(int(v) for v in self.objectives)

    @property
    def feasible(self) -> bool:
        return bool((self.residual >= 0).all())

    def items(self) -> np.ndarray:
        return np.flatnonzero(self.flags)

    def with_item(self, inst: Instance, i: int) -> Solution:
        if self.flags[i]:
            raise ValueError(f"item {i} already packed")
        flags = self.flags.copy()
        flags[i] = 1
        return Solution(flags, self.objectives + inst.profits[i], self.residual - inst.weights[i])

    def without_item(self, inst: Instance, i: int) -> Solution:
        if not self.flags[i]:
            raise ValueError(f"item {i} not packed")
        flags = self.flags.copy()
        flags[i] = 0
        return Solution(flags, self.objectives - inst.profits[i], self.residual + inst.weights[i])

    def flag_string(self) -> str:
        return "".join("1" if f else "0" for f in self.flags)

    def __repr__(self):
        return f"Solution(z={self.key}, items={len(self.items())})"


def evaluate(inst: Instance, flags) -> Solution:
    flags = np.asarray(flags)
    if flags.shape != (inst.n,):
        raise ValueError(f"expected {inst.n} flags, got shape {flags.shape}")
    x = (flags != 0).astype(np.uint8)
    objectives = x.astype(np.int64) @ inst.profits
    residual = inst.capacities - x.astype(np.int64) @ inst.weights
    return Solution(x, objectives, residual)


def empty_solution(inst: Instance) -> Solution:
    return Solution(np.zeros(inst.n, dtype=np.uint8), np.zeros(inst.p, dtype=np.int64), inst.capacities.copy())


def is_feasible(sol: Solution) -> bool:
    return sol.feasible


def greedy_repair(inst: Instance, flags, lam) -> Solution:
    """Drop packed items of smallest R2 = (lam . c_i) / sum_j w_ij until feasible.

    Ties go to the lowest index; items of zero total weight are never dropped.
    """
    sol = evaluate(inst, flags)
    if sol.feasible:
        return sol
    lam = np.asarray(lam, dtype=np.float64)
    if lam.shape != (inst.p,) or (lam < 0).any():
        raise ValueError("lambda must have p nonnegative components")
    x = sol.flags.copy()
    residual = sol.residual.copy()
    _kernels.repair(inst.profits, inst.weights, x, residual, lam)
    return Solution(x, x.astype(np.int64) @ inst.profits, residual)
