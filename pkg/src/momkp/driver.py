"""Pareto local search over the VLSN and the two-phase driver."""

from __future__ import annotations

import logging
import time
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .archive import Archive
from .construct import default_weight_count, initial_population
from .instance import Instance
from .neighborhood import neighbors, population_ranges
from .rng import make_generator
from .subsolvers import Subsolver, iteration_schedule

log = logging.getLogger(__name__)

# (L, N) per instance class, keyed by (items, objectives)
CLASS_DEFAULTS = {
    (250, 2): (9, 200),
    (500, 2): (15, 100),
    (750, 2): (9, 100),
    (250, 3): (12, 200),
}


@dataclass(frozen=True)
class ParamSet:
    S: int = 100
    L: int = 9
    subsolver: str = "memots"
    N: int | None = 200
    seed: int = 0
    time_limit: float | None = None

    def __post_init__(self):
        if self.S < 1:
            raise ValueError("S must be at least 1")
        if self.L < 1:
            raise ValueError("L must be at least 1")
        if self.N is not None and self.N < 0:
            raise ValueError("N must be nonnegative")
        if self.time_limit is not None and self.time_limit < 0:
            raise ValueError("time_limit must be nonnegative")
        Subsolver(self.subsolver)

    @property
    def iterations(self) -> int:
        """MEMOTS iterations: explicit N, else the schedule in L."""
        return self.N if self.N is not None else iteration_schedule(self.L)

    def subsolver_spec(self) -> Subsolver:
        if self.subsolver == "exact":
            return Subsolver.exact()
        return Subsolver.memots(self.iterations)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> ParamSet:
        known = {k: data[k] for k in cls.__dataclass_fields__ if k in data}
        return cls(**known)

    def with_(self, **changes) -> ParamSet:
        return replace(self, **changes)


def default_params(n: int, p: int, **overrides) -> ParamSet:
    """Parameters of the nearest published instance class."""
    if p == 2:
        size = min((250, 500, 750), key=lambda s: abs(s - n))
        L, N = CLASS_DEFAULTS[(size, 2)]
    else:
        L, N = CLASS_DEFAULTS[(250, 3)]
    base = ParamSet(S=default_weight_count(p), L=L, subsolver="memots", N=N)
    return base.with_(**overrides)


@dataclass
class RunResult:
    front: Archive
    params: ParamSet
    phase1_seconds: float = 0.0
    phase2_seconds: float = 0.0
    passes: int = 0
    neighbor_count: int = 0
    converged: bool = True
    extra: dict = field(default_factory=dict)


def explore(inst: Instance, population, front: Archive, params: ParamSet, pass_no: int, deadline=None):
    """One PLS pass: neighbors of every member of ``population``.

    A neighbor not weakly dominated by its generator is offered to ``front``;
    if accepted it also enters the returned auxiliary population.
    Returns (new_population, neighbor_count, interrupted).
    """
    subsolver = params.subsolver_spec()
    ranges = population_ranges(population, inst.p) if inst.p == 2 else None
    fresh = Archive(inst.p)
    count = 0
    for idx, sol in enumerate(population):
        if deadline is not None and time.perf_counter() >= deadline:
            return fresh, count, True
        rng = make_generator(params.seed, "adaptive", pass_no, idx)
        for nb in neighbors(inst, sol, population, params.L, subsolver, rng, ranges):
            count += 1
            if (sol.objectives >= nb.objectives).all():
                continue
            if front.add(nb):
                fresh.add(nb)
    return fresh, count, False


def pls(inst: Instance, P0: Archive, params: ParamSet, start: float | None = None) -> RunResult:
    """Pareto local search from P0 until no pass adds a new solution.

    Solutions of the current population are expanded in insertion order,
    including those dominated meanwhile. With a time limit the run stops
    after the neighborhood in progress and reports converged=False.
    """
    if not P0:
        raise ValueError("PLS needs a nonempty initial population")
    t0 = time.perf_counter()
    start = t0 if start is None else start
    deadline = None if params.time_limit is None else start + params.time_limit
    front = P0.copy()
    population = list(P0)
    passes = 0
    total = 0
    converged = True
    while population:
        fresh, count, interrupted = explore(inst, population, front, params, passes, deadline)
        passes += 1
        total += count
        log.debug("pass %d: %d neighbors, %d new, front %d", passes, count, len(fresh), len(front))
        if interrupted:
            converged = False
            break
        population = list(fresh)
    return RunResult(
        front=front,
        params=params,
        phase2_seconds=time.perf_counter() - t0,
        passes=passes,
        neighbor_count=total,
        converged=converged,
    )


def two_phase_pls(inst: Instance, params: ParamSet) -> RunResult:
    """Greedy weighted-sum population (phase 1) refined by PLS (phase 2)."""
    t0 = time.perf_counter()
    P0 = initial_population(inst, params.S, params.seed)
    t1 = time.perf_counter()
    result = pls(inst, P0, params, start=t0)
    result.phase1_seconds = t1 - t0
    result.extra["initial_size"] = len(P0)
    return result


def front_vectors(result: RunResult) -> np.ndarray:
    return result.front.objectives()
