"""Command-line front end: plan, classify, verify, random.

Exit codes: 0 success, 1 property failure (verify), 2 usage or validation
error (the offending error class name goes to stderr).

Instance files are JSON with one shared obstacle block::

    {"d": 2, "n": 2, "obstacles": [[..], [..]], "start": [[..], ..], "goal": [[..], ..]}

An alternate two-block form ({"start": {"obstacles": .., "robots": ..}, ..})
is accepted, but both obstacle blocks must match exactly. Trajectories are
written as CSV (17 significant digits, lossless for doubles) or JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .configspace import Configuration, QueryPair, entity_labels
from .errors import DimensionMismatch, PlanningError
from .geometry import DEFAULT_TOL
from .planner import classify, plan
from .verifier import InstanceSpec, generate_queries, run_suite


def _shape_check(name: str, arr: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    if arr.shape != shape:
        raise DimensionMismatch(f"{name} must have shape {shape}, got {arr.shape}")
    return arr


def load_instance(path: str | Path) -> QueryPair:
    """Parse an instance file into a query pair (shapes checked, not planned)."""
    data = json.loads(Path(path).read_text())
    d = int(data["d"])
    n = int(data["n"])
    if "obstacles" in data:
        obstacles = _shape_check("obstacles", np.array(data["obstacles"], float), (2, d))
        start = _shape_check("start", np.array(data["start"], float), (n, d))
        goal = _shape_check("goal", np.array(data["goal"], float), (n, d))
    else:
        # Two-block form: each side carries its own obstacle block. A mismatch
        # between the blocks surfaces as ObstacleMismatch when the pair is used.
        s_obs = _shape_check("start.obstacles", np.array(data["start"]["obstacles"], float), (2, d))
        g_obs = _shape_check("goal.obstacles", np.array(data["goal"]["obstacles"], float), (2, d))
        start = _shape_check("start.robots", np.array(data["start"]["robots"], float), (n, d))
        goal = _shape_check("goal.robots", np.array(data["goal"]["robots"], float), (n, d))
        return QueryPair(Configuration(s_obs, start), Configuration(g_obs, goal))
    return QueryPair(Configuration(obstacles, start), Configuration(obstacles, goal))


def instance_to_dict(P: QueryPair) -> dict:
    return {
        "d": P.start.d,
        "n": P.start.n,
        "obstacles": P.start.obstacles.tolist(),
        "start": P.start.robots.tolist(),
        "goal": P.goal.robots.tolist(),
    }


def _trajectory_columns(n: int, d: int) -> list[str]:
    cols = ["t"]
    for label in entity_labels(n):
        cols.extend(f"{label}_{k}" for k in range(d))
    return cols


def _fmt(v: float) -> str:
    return format(v, ".17g")


def write_trajectory(path, ts: np.ndarray, out_file: Path, fmt: str) -> None:
    positions = path.positions_many(ts)
    columns = _trajectory_columns(path.n, path.d)
    rows = np.concatenate([ts[:, None], positions.reshape(len(ts), -1)], axis=1)
    if fmt == "csv":
        lines = [",".join(columns)]
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        out_file.write_text("\n".join(lines) + "\n")
    else:
        payload = {
            "region": None if path.region is None else
            {"i": path.region.i, "j": path.region.j, "ell": path.region.ell},
            "columns": columns,
            "samples": [[float(v) for v in row] for row in rows],
        }
        out_file.write_text(json.dumps(payload) + "\n")


def cmd_plan(args) -> int:
    P = load_instance(args.input)
    path = plan(P, args.proj_tol)
    ts = np.arange(args.samples, dtype=float) / (args.samples - 1)
    write_trajectory(path, ts, Path(args.output), args.format)
    region = path.region
    print(f"i={region.i} j={region.j} ell={region.ell}")
    return 0


def cmd_classify(args) -> int:
    region = classify(load_instance(args.input), args.proj_tol)
    print(f"i={region.i} j={region.j} ell={region.ell}")
    return 0


def cmd_verify(args) -> int:
    spec = InstanceSpec(d=args.d, n=args.n, seed=args.seed, count=args.count,
                        scale=args.scale, min_sep=args.min_sep)
    report = run_suite(spec, samples=args.samples, proj_tol=args.proj_tol)
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        hist = ", ".join(f"{ell}: {c}" for ell, c in sorted(report.region_histogram.items()))
        print(f"instances checked: {report.instances}")
        print(f"failures: {len(report.failures)}")
        if report.min_separation is not None:
            print(f"min separation: {report.min_separation:.6e}")
        if report.continuity_constant is not None:
            print(f"continuity constant K: {report.continuity_constant:.3f}")
        print(f"attainable regions: {len(report.region_histogram)} (ell: {hist})")
        for failure in report.failures[:20]:
            print(f"FAIL [{failure.instance}] {failure.prop}: {failure.witness}")
    return 0 if report.passed else 1


def cmd_random(args) -> int:
    spec = InstanceSpec(d=args.d, n=args.n, seed=args.seed, count=args.count,
                        scale=args.scale, min_sep=args.min_sep)
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    for idx, P in enumerate(generate_queries(spec)):
        payload = json.dumps(instance_to_dict(P), indent=2) + "\n"
        (out_dir / f"instance_{idx:04d}.json").write_text(payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paraplan",
        description="Collision-free planning for point robots around two shared obstacles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_proj_tol(p):
        p.add_argument("--proj-tol", type=float, default=DEFAULT_TOL,
                       dest="proj_tol", help="projection-equality tolerance")

    p = sub.add_parser("plan", help="plan a query and write the trajectory")
    p.add_argument("input", help="instance JSON file")
    p.add_argument("output", help="trajectory output file")
    p.add_argument("--samples", type=int, default=101, help="number of time samples")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    add_proj_tol(p)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("classify", help="print the region label of a query")
    p.add_argument("input", help="instance JSON file")
    add_proj_tol(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run the verification suite on a random batch")
    p.add_argument("--n", type=int, default=2, help="number of robots")
    p.add_argument("--d", type=int, default=2, help="ambient dimension (even)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100, help="number of query pairs")
    p.add_argument("--samples", type=int, default=1000, help="time samples per path")
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--min-sep", type=float, default=0.05, dest="min_sep")
    p.add_argument("--format", choices=("text", "json"), default="text")
    add_proj_tol(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("random", help="write a deterministic batch of instance files")
    p.add_argument("output", help="output directory")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--min-sep", type=float, default=0.05, dest="min_sep")
    p.set_defaults(func=cmd_random)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PlanningError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
