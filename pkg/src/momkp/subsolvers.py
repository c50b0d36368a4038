"""Residual-problem solvers: exact multiobjective branch and bound, MEMOTS-lite.

Also holds the L -> N iteration schedule used when MEMOTS-lite runs inside
the neighborhood.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .archive import Archive
from .construct import sample_simplex, uniform_grid
from .instance import Instance
from .solution import Solution

DEFAULT_NODE_LIMIT = 10**7
# integer weight directions (t, 8 - t) for the biobjective weighted-sum cuts
BIOBJECTIVE_CUTS = np.array([[t, 8 - t] for t in range(1, 8)], dtype=np.int64)
# largest suffix table (entries) built before falling back to Dantzig bounds
MAX_TABLE_ENTRIES = 8_000_000
# short tabu walk appended to each MEMOTS-lite ascent
TABU_STEPS = 15
TABU_TENURE = 4


class BudgetExceeded(RuntimeError):
    """The branch and bound hit its node budget before proving the front complete."""

    def __init__(self, nodes, partial_size):
        self.nodes = nodes
        self.partial_size = partial_size
        super().__init__(f"node budget exhausted after {nodes} nodes; front incomplete")


@dataclass(frozen=True)
class Subsolver:
    """Which residual solver the neighborhood calls. N is only used by MEMOTS."""

    kind: str = "exact"
    N: int = 0

    def __post_init__(self):
        if self.kind not in ("exact", "memots"):
            raise ValueError(f"unknown subsolver {self.kind!r}")
        if self.N < 0:
            raise ValueError("N must be nonnegative")

    @classmethod
    def exact(cls):
        return cls("exact")

    @classmethod
    def memots(cls, N):
        return cls("memots", int(N))


def efficiency_order(profits, weights) -> np.ndarray:
    """Item indices by non-increasing profit/weight, zero weights first, ties by index."""
    profits = np.asarray(profits, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    eff = np.full(profits.shape, np.inf)
    np.divide(profits, weights, out=eff, where=weights > 0)
    return np.lexsort((np.arange(len(eff)), -eff))


def dantzig_bound(profits, weights, capacity) -> float:
    """Optimum of the LP relaxation of a single-constraint 0/1 knapsack.

    Items are packed by non-increasing efficiency; the first item that does
    not fit (the split item) is taken fractionally.
    """
    profits = np.asarray(profits, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    if capacity < 0 or (weights < 0).any():
        raise ValueError("capacity and weights must be nonnegative")
    cap = float(capacity)
    value = 0.0
    for i in efficiency_order(profits, weights):
        if weights[i] <= cap:
            cap -= weights[i]
            value += profits[i]
        else:
            value += profits[i] * cap / weights[i]
            break
    return value


def branching_order(prob: Instance) -> np.ndarray:
    """Items by decreasing aggregate efficiency sum_k c_k / sum_j w_j."""
    return efficiency_order(prob.profits.sum(axis=1), prob.weights.sum(axis=1))


def _bound_columns(c, cuts):
    if len(cuts) == 0:
        return c
    return np.hstack([c, c @ cuts.T])


def solve_exact_bb(
    prob: Instance,
    node_limit: int | None = DEFAULT_NODE_LIMIT,
    *,
    fathom: bool = True,
    cuts: bool = True,
    bound: str = "auto",
    stats: dict | None = None,
) -> Archive:
    """Exact efficient front by depth-first branch and bound.

    Nodes are fathomed when their ideal point is weakly dominated by an
    archived point. With ``cuts`` (two objectives only) weighted-sum bounds
    also fathom nodes whose whole bound region lies under the archive's
    staircase. ``bound`` selects the per-column relaxation: "dantzig",
    "table" (exact single-constraint suffix optima) or "auto".
    ``fathom=False`` disables all bound-based pruning.

    Raises BudgetExceeded when ``node_limit`` nodes are explored first;
    ``None`` or 0 means unlimited.
    """
    if bound not in ("auto", "dantzig", "table"):
        raise ValueError(f"unknown bound mode {bound!r}")
    order = branching_order(prob)
    c = np.ascontiguousarray(prob.profits[order])
    w = np.ascontiguousarray(prob.weights[order])
    caps = prob.capacities.copy()
    cut_rows = BIOBJECTIVE_CUTS if (cuts and prob.p == 2) else np.zeros((0, prob.p), dtype=np.int64)
    bp = _bound_columns(c, cut_rows)
    widths = np.minimum(caps, w.sum(axis=0)).astype(np.int64)
    entries = bp.shape[1] * prob.m * (prob.n + 1) * (int(widths.max()) + 1)
    use_table = bound == "table" or (bound == "auto" and entries <= MAX_TABLE_ENTRIES)
    if use_table:
        table = _kernels.suffix_knapsack_tables(bp, w, widths)
        eff = np.zeros((0, 0, 0), dtype=np.int64)
    else:
        table = np.zeros((0, 0, 0, 0), dtype=np.int64)
        eff = np.empty((bp.shape[1], prob.m, prob.n), dtype=np.int64)
        for q in range(bp.shape[1]):
            for j in range(prob.m):
                eff[q, j] = efficiency_order(bp[:, q], w[:, j])
    flags, objs, nodes, complete = _kernels.branch_and_bound(
        c, w, caps, cut_rows, eff, int(node_limit or 0), fathom, table, widths
    )
    if stats is not None:
        stats["nodes"] = int(nodes)
        stats["bound"] = "table" if use_table else "dantzig"
    if not complete:
        raise BudgetExceeded(int(nodes), len(objs))
    return _to_archive(prob, order, flags)


def _to_archive(prob: Instance, order, sub_flags) -> Archive:
    arch = Archive(prob.p)
    for row in sub_flags:
        flags = np.zeros(prob.n, dtype=np.uint8)
        flags[order] = row
        x = flags.astype(np.int64)
        arch.add(Solution(flags, x @ prob.profits, prob.capacities - x @ prob.weights))
    return arch


def iteration_schedule(L: int) -> int:
    """MEMOTS iterations for list depth L: 100 + 75/4 (L - 4), rounded half up."""
    if L < 4:
        warnings.warn(f"iteration schedule is defined for L >= 4; clamping L={L} to N=100", stacklevel=2)
        return 100
    return int(math.floor(100 + 75 * (L - 4) / 4 + 0.5))


def memots_seed_weights(p: int, N: int, rng: np.random.Generator) -> np.ndarray:
    count = max(2, min(10, N))
    if p == 2:
        return uniform_grid(count)
    return sample_simplex(rng, count, p)


def solve_memots_lite(prob: Instance, N: int, rng: np.random.Generator) -> Archive:
    """Simplified memetic approximation of the efficient front of a small problem.

    Seeded with greedy solutions over max(2, min(10, N)) weight vectors, then
    N iterations of: two distinct random archive parents, uniform crossover,
    R2 repair under a random simplex weight, steepest ascent of the weighted
    sum over single-flip and swap moves, then a short tabu walk (TABU_STEPS
    moves, items frozen for TABU_TENURE steps after moving). Every feasible
    solution evaluated along the way is offered to the archive.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    init = memots_seed_weights(prob.p, N, rng)
    draws = rng.random((N, 2 + prob.n + prob.p))
    flags, _ = _kernels.memots_lite(
        prob.profits, prob.weights, prob.capacities.copy(), init, draws, TABU_STEPS, TABU_TENURE
    )
    return _to_archive(prob, np.arange(prob.n), flags)
