"""Compiled vs interpreted kernel timings.

    python benchmarks/bench_kernels.py [--repeat 3]

Three columns per kernel: the numba dispatcher, its ``.py_func`` (outer
function interpreted, nested kernel calls still compiled) and the full
fallback, timed in a child process started with MOMKP_DISABLE_NUMBA=1.
The first compiled call is made before timing, so compilation is excluded.
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from momkp import _kernels, generate_zmkp
from momkp.subsolvers import BIOBJECTIVE_CUTS, TABU_STEPS, TABU_TENURE, branching_order


def _best_of(fn, args_factory, repeat):
    best = float("inf")
    for _ in range(repeat):
        args = args_factory()
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    inst = generate_zmkp(250, 2, 1)
    lam = np.array([0.5, 0.5])

    def greedy_args():
        return inst.profits, inst.weights, np.zeros(inst.n, np.uint8), inst.capacities.copy(), lam

    small = generate_zmkp(16, 2, 3)
    order = branching_order(small)
    c = np.ascontiguousarray(small.profits[order])
    w = np.ascontiguousarray(small.weights[order])
    bp = np.hstack([c, c @ BIOBJECTIVE_CUTS.T])
    widths = np.minimum(small.capacities, w.sum(axis=0)).astype(np.int64)
    table = _kernels.suffix_knapsack_tables(bp, w, widths)

    def bb_args():
        return c, w, small.capacities.copy(), BIOBJECTIVE_CUTS, np.zeros((0, 0, 0), np.int64), 0, True, table, widths

    rng = np.random.default_rng(0)
    draws = rng.random((40, 2 + small.n + 2))
    init = np.array([[0.0, 1.0], [0.5, 0.5], [1.0, 0.0]])

    def memots_args():
        return small.profits, small.weights, small.capacities.copy(), init, draws, TABU_STEPS, TABU_TENURE

    return [
        ("greedy_fill n=250", _kernels.greedy_fill, greedy_args),
        ("branch_and_bound n=16", _kernels.branch_and_bound, bb_args),
        ("memots_lite n=16 N=40", _kernels.memots_lite, memots_args),
    ]


def _fallback_times(repeat):
    env = {**os.environ, _kernels.DISABLE_ENV: "1"}
    cmd = [sys.executable, __file__, "--repeat", str(repeat), "--json"]
    out = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True).stdout
    return json.loads(out)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--json", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()
    if args.json:
        timings = {}
        for name, fn, factory in cases():
            fn(*factory())
            timings[name] = _best_of(fn, factory, args.repeat)
        print(json.dumps(timings))
        return
    if not _kernels.USING_NUMBA:
        sys.exit("numba is not active; unset MOMKP_DISABLE_NUMBA or install numba")
    fallback = _fallback_times(args.repeat)
    print(f"{'kernel':<24}{'compiled s':>12}{'py_func s':>12}{'fallback s':>12}{'speedup':>10}")
    for name, fn, factory in cases():
        fn(*factory())  # warm-up / compile
        fast = _best_of(fn, factory, args.repeat)
        outer = _best_of(fn.py_func, factory, args.repeat)
        slow = fallback[name]
        print(f"{name:<24}{fast:>12.5f}{outer:>12.5f}{slow:>12.5f}{slow / fast:>10.1f}")


if __name__ == "__main__":
    main()
