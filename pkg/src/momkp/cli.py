"""Command-line harness: generate, solve, exact, evaluate, sweep, plot.

Exit codes: 0 success, 2 usage error, 3 data/format error, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from .archive import Archive, front_csv, read_front_csv
from .construct import greedy_construct, initial_population
from .driver import ParamSet, default_params, pls, two_phase_pls
from .indicators import ReferenceData, assemble_report, proportion_nondominated
from .instance import InstanceFormatError, generate_zmkp, read_instance, serialize_instance
from .plot import svg_scatter
from .rng import make_generator
from .subsolvers import BudgetExceeded, DEFAULT_NODE_LIMIT, solve_exact_bb, solve_memots_lite

log = logging.getLogger("momkp")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_BUDGET = 0, 2, 3, 4
ALGORITHMS = ("2ppls", "pls-only", "greedy", "memots", "exact")
DEFAULT_REPETITIONS = 20


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _floats(text, name):
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"--{name} expects comma-separated numbers") from None


# -- generate ---------------------------------------------------------------


def cmd_generate(args) -> int:
    out = Path(args.out)
    if out.exists() and not args.force:
        raise UsageError(f"{out} exists; pass --force to overwrite")
    try:
        inst = generate_zmkp(args.n, args.p, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = serialize_instance(inst, comment=f"zmkp n={args.n} p={args.p} seed={args.seed}")
    _write_text(out, text)
    return EXIT_OK


# -- solve ------------------------------------------------------------------


def load_config(args) -> dict:
    """Merge a config JSON file with command-line flags (flags win)."""
    cfg = {}
    if args.config:
        try:
            cfg = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise DataError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(cfg, dict):
            raise DataError("config must be a JSON object")
    params = dict(cfg.get("params", {}))
    for flag, key in (("S", "S"), ("L", "L"), ("N", "N"), ("subsolver", "subsolver"), ("seed", "seed"), ("time_limit", "time_limit")):
        value = getattr(args, flag)
        if value is not None:
            params[key] = value
    cfg["params"] = params
    for key in ("instance", "algorithm", "repetitions", "reference", "out", "node_limit"):
        value = getattr(args, key)
        if value is not None:
            cfg[key] = value
    if args.generate:
        try:
            n, p, seed = (int(v) for v in args.generate.split(","))
        except ValueError:
            raise UsageError("--generate expects N,P,SEED") from None
        cfg["generate"] = {"n": n, "p": p, "seed": seed}
    if args.with_flags:
        cfg["with_flags"] = True
    cfg.setdefault("algorithm", "2ppls")
    cfg.setdefault("repetitions", DEFAULT_REPETITIONS)
    if cfg["algorithm"] not in ALGORITHMS:
        raise UsageError(f"unknown algorithm {cfg['algorithm']!r}")
    if int(cfg["repetitions"]) < 1:
        raise UsageError("repetitions must be at least 1")
    if ("instance" in cfg) == ("generate" in cfg):
        raise UsageError("give exactly one of --instance or --generate")
    if "out" not in cfg:
        raise UsageError("--out is required")
    return cfg


def _load_instance(cfg):
    if "instance" in cfg:
        path = Path(cfg["instance"])
        if not path.exists():
            raise DataError(f"instance file {path} not found")
        raw = path.read_bytes()
        return read_instance(path), {"instance": str(cfg["instance"]), "instance_sha256": hashlib.sha256(raw).hexdigest()}
    g = cfg["generate"]
    try:
        inst = generate_zmkp(g["n"], g["p"], g["seed"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return inst, {"generate": g}


def run_algorithm(inst, algorithm: str, params: ParamSet, node_limit=DEFAULT_NODE_LIMIT) -> dict:
    """One seeded run; returns the front and deterministic run facts plus timings."""
    t0 = time.perf_counter()
    facts = {}
    if algorithm == "2ppls":
        result = two_phase_pls(inst, params)
        front = result.front
        facts = {"passes": result.passes, "neighbor_count": result.neighbor_count, "converged": result.converged}
        timing = {"phase1_seconds": result.phase1_seconds, "phase2_seconds": result.phase2_seconds}
    elif algorithm == "pls-only":
        start = greedy_construct(inst, np.full(inst.p, 1.0 / inst.p))
        result = pls(inst, Archive(inst.p, [start]), params)
        front = result.front
        facts = {"passes": result.passes, "neighbor_count": result.neighbor_count, "converged": result.converged}
        timing = {"phase2_seconds": result.phase2_seconds}
    elif algorithm == "greedy":
        front = initial_population(inst, params.S, params.seed)
        timing = {}
    elif algorithm == "memots":
        front = solve_memots_lite(inst, params.iterations, make_generator(params.seed, "memots", 0))
        timing = {}
    else:
        front = solve_exact_bb(inst, node_limit)
        timing = {}
    timing["total_seconds"] = time.perf_counter() - t0
    return {"front": front, "facts": facts, "timing": timing}


def _reference_data(cfg, p, utopian=None):
    if "reference" not in cfg:
        return None
    ref = read_front_csv(cfg["reference"], p)
    if ref.size == 0:
        raise DataError("reference front is empty")
    return ReferenceData.from_front(ref, utopian=_floats(utopian, "utopian") if utopian else None)


def cmd_solve(args) -> int:
    cfg = load_config(args)
    inst, source = _load_instance(cfg)
    defaults = default_params(inst.n, inst.p)
    params = ParamSet.from_dict({**defaults.to_dict(), **cfg["params"]})
    refdata = _reference_data(cfg, inst.p, args.utopian)
    if args.require_reference and refdata is None:
        raise UsageError("reference-based indicators requested but no --reference given")
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    reps = int(cfg["repetitions"])
    node_limit = cfg.get("node_limit", DEFAULT_NODE_LIMIT)
    rows = []
    for r in range(reps):
        run_params = params.with_(seed=params.seed + r)
        try:
            run = run_algorithm(inst, cfg["algorithm"], run_params, node_limit)
        except BudgetExceeded as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        front = run["front"]
        report = {
            **source,
            "algorithm": cfg["algorithm"],
            "params": run_params.to_dict(),
            "seed": run_params.seed,
            "repetition": r,
            "pe_count": len(front),
            **run["facts"],
        }
        if refdata is not None:
            report.update(assemble_report(front.objectives(), refdata).to_dict())
        stem = f"run_{r:02d}"
        _write_text(out / f"{stem}.front.csv", front_csv(front, cfg.get("with_flags", False)))
        _write_text(out / f"{stem}.report.json", _dump_json(report))
        _write_text(out / f"{stem}.timing.json", _dump_json(run["timing"]))
        rows.append(report)
        log.info("run %d seed %d: |PE|=%d", r, run_params.seed, len(front))
    _write_text(out / "aggregate.json", _dump_json(aggregate(rows, cfg)))
    return EXIT_OK


AGGREGATED = ("hypervolume", "eps", "r", "d1", "d2", "p_yn", "pe_count")


def aggregate(rows, cfg) -> dict:
    """Mean and sample standard deviation of every indicator present in all runs."""
    out = {"runs": len(rows), "seeds": [row["seed"] for row in rows], "algorithm": cfg["algorithm"], "mean": {}, "std": {}}
    for key in AGGREGATED:
        if all(key in row for row in rows):
            vals = np.array([row[key] for row in rows], dtype=np.float64)
            out["mean"][key] = float(vals.mean())
            out["std"][key] = float(vals.std(ddof=1)) if len(vals) > 1 else 0.0
    return out


# -- exact ------------------------------------------------------------------


def cmd_exact(args) -> int:
    inst = read_instance(args.instance)
    try:
        front = solve_exact_bb(inst, args.node_limit)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    text = front_csv(front, args.with_flags)
    if args.out:
        _write_text(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- evaluate ---------------------------------------------------------------


def cmd_evaluate(args) -> int:
    front = read_front_csv(args.front)
    ref = read_front_csv(args.reference)
    if front.size == 0 or ref.size == 0:
        raise DataError("front and reference must be nonempty")
    if front.shape[1] != ref.shape[1]:
        raise DataError("front and reference differ in objective count")
    refdata = ReferenceData.from_front(
        ref,
        utopian=_floats(args.utopian, "utopian") if args.utopian else None,
        hv_reference=_floats(args.hv_ref, "hv-ref") if args.hv_ref else None,
        weight_count=args.weight_count,
    )
    report = assemble_report(front, refdata).to_dict()
    if args.format == "csv":
        keys = list(report)
        text = ",".join(keys) + "\n" + ",".join(repr(report[k]) for k in keys) + "\n"
    else:
        text = _dump_json(report)
    if args.out:
        _write_text(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- sweep ------------------------------------------------------------------


def _parse_range(text):
    try:
        lo, hi = (int(v) for v in text.split(":"))
    except ValueError:
        raise UsageError("--L-range expects LO:HI") from None
    if lo < 1 or hi < lo:
        raise UsageError("--L-range needs 1 <= LO <= HI")
    return range(lo, hi + 1)


def cmd_sweep(args) -> int:
    inst = read_instance(args.instance)
    if args.reference:
        ref = read_front_csv(args.reference)
    else:
        log.info("no reference given; computing the exact front")
        try:
            ref = solve_exact_bb(inst, args.node_limit).objectives()
        except BudgetExceeded as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_BUDGET
    defaults = default_params(inst.n, inst.p)
    lines = ["L,N,mean_p_yn,mean_seconds"]
    for L in _parse_range(args.L_range):
        params = defaults.with_(L=L, subsolver=args.subsolver, N=args.N, S=args.S or defaults.S)
        pyn = []
        secs = []
        for r in range(args.seeds):
            t0 = time.perf_counter()
            result = two_phase_pls(inst, params.with_(seed=args.seed + r))
            secs.append(time.perf_counter() - t0)
            pyn.append(proportion_nondominated(result.front.objectives(), ref))
        n_col = str(params.iterations) if args.subsolver == "memots" else ""
        lines.append(f"{L},{n_col},{np.mean(pyn):.6f},{np.mean(secs):.6f}")
    text = "\n".join(lines) + "\n"
    if args.out:
        _write_text(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- plot -------------------------------------------------------------------


def cmd_plot(args) -> int:
    series = []
    for path in args.fronts:
        pts = read_front_csv(path)
        if pts.size and pts.shape[1] != 2:
            raise DataError(f"{path}: plotting supports two objectives only (got {pts.shape[1]})")
        series.append((Path(path).stem, pts))
    _write_text(Path(args.out), svg_scatter(series))
    return EXIT_OK


# -- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="momkp", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a random ZMKP-style instance")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--force", action="store_true")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="run seeded repetitions of an algorithm")
    s.add_argument("--config", help="experiment config JSON (flags override)")
    s.add_argument("--instance")
    s.add_argument("--generate", metavar="N,P,SEED")
    s.add_argument("--algorithm", choices=ALGORITHMS)
    s.add_argument("--S", type=int)
    s.add_argument("--L", type=int)
    s.add_argument("--N", type=int)
    s.add_argument("--subsolver", choices=("exact", "memots"))
    s.add_argument("--seed", type=int)
    s.add_argument("--time-limit", dest="time_limit", type=float)
    s.add_argument("--repetitions", type=int)
    s.add_argument("--reference")
    s.add_argument("--require-reference", action="store_true")
    s.add_argument("--utopian")
    s.add_argument("--node-limit", dest="node_limit", type=int)
    s.add_argument("--with-flags", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("exact", help="exact efficient front by branch and bound")
    e.add_argument("instance")
    e.add_argument("--out")
    e.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT)
    e.add_argument("--with-flags", action="store_true")
    e.set_defaults(func=cmd_exact)

    v = sub.add_parser("evaluate", help="indicators of a front against a reference")
    v.add_argument("front")
    v.add_argument("reference")
    v.add_argument("--utopian")
    v.add_argument("--hv-ref")
    v.add_argument("--weight-count", type=int)
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.add_argument("--out")
    v.set_defaults(func=cmd_evaluate)

    w = sub.add_parser("sweep", help="mean P_YN and time as a function of L")
    w.add_argument("instance")
    w.add_argument("--L-range", dest="L_range", default="4:8")
    w.add_argument("--subsolver", choices=("exact", "memots"), default="exact")
    w.add_argument("--N", type=int)
    w.add_argument("--S", type=int)
    w.add_argument("--seeds", type=int, default=10)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--reference")
    w.add_argument("--node-limit", type=int, default=None)
    w.add_argument("--out")
    w.set_defaults(func=cmd_sweep)

    pl = sub.add_parser("plot", help="SVG scatter of biobjective fronts")
    pl.add_argument("fronts", nargs="+")
    pl.add_argument("--out", required=True)
    pl.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, InstanceFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
