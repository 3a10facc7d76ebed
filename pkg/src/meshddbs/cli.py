"""Command-line interface: ``meshddbs {ball,table,construct,verify,search,bounds}``.

Exit codes: 0 success, 1 verified false, 2 usage or parse error,
3 resource budget exceeded, 10 best-effort (non-exact) search result.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from meshddbs import __version__
from meshddbs.constructions import Family, build, family_for, predict
from meshddbs.lattice_ball import (
    BallSpec,
    BudgetExceededError,
    ConstraintSpec,
    Parity,
    ball_size_closed,
    ball_size_recurrence,
    enumerate_ball,
    generating_series,
    moore_bound,
    size_table,
)
from meshddbs.mesh_graph import to_dot
from meshddbs.search import (
    DEFAULT_MAX_NODES,
    LITERATURE_K2_DELTA3,
    CheckpointError,
    SearchBudget,
    exact_search,
    heuristic_search,
    load_checkpoint,
    save_checkpoint,
)
from meshddbs.serialization import GraphParseError, dump_graph, parse_graph
from meshddbs.verifier import check_sandwich, verify

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_INEXACT = 10

log = logging.getLogger("meshddbs")


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _emit(obj: dict) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _usage_error(message: str) -> int:
    print(f"meshddbs: error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _env_budget() -> int:
    raw = os.environ.get("MESHDDBS_BUDGET")
    if raw is None:
        return DEFAULT_MAX_NODES
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"MESHDDBS_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"MESHDDBS_BUDGET must be positive, got {value}")
    return value


# ---------------------------------------------------------------------------


def cmd_ball(args: argparse.Namespace) -> int:
    spec = BallSpec(args.dim, args.radius, Parity(args.parity))
    if args.method == "closed":
        count = ball_size_closed(spec)
    elif args.method == "recurrence":
        count = ball_size_recurrence(spec)
    elif args.method == "series":
        count = generating_series(spec.dimension, spec.parity, spec.radius)[spec.radius]
    else:
        if spec.dimension == 0:
            count = 1
        else:
            try:
                count = enumerate_ball(spec, budget=args.budget).order
            except BudgetExceededError as exc:
                print(f"meshddbs: {exc}", file=sys.stderr)
                return EXIT_BUDGET
    print(count)
    return EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    rows = size_table(args.max_dim, args.max_radius, Parity(args.parity))
    cols = range(args.max_radius + 1)
    if args.format == "csv":
        print("k," + ",".join(f"p={p}" for p in cols))
        for k, row in enumerate(rows):
            print(f"{k}," + ",".join(map(str, row)))
    else:
        print("| k \\ p | " + " | ".join(map(str, cols)) + " |")
        print("|---|" + "---|" * len(cols))
        for k, row in enumerate(rows):
            print(f"| {k} | " + " | ".join(map(str, row)) + " |")
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    if args.family == "ball":
        if args.dim is None or args.dim < 1:
            return _usage_error("--family ball needs --dim >= 1")
        spec = BallSpec(args.dim, args.p, Parity(args.parity))
        try:
            g = enumerate_ball(spec)
        except BudgetExceededError as exc:
            print(f"meshddbs: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        constraint = ConstraintSpec(2 * args.dim, spec.diameter())
        prediction = {"family": "ball", "p": args.p, "parity": args.parity,
                      "order": ball_size_closed(spec), "diameter": spec.diameter()}
    else:
        family = Family(args.family)
        if args.p < family.min_p:
            return _usage_error(f"{family.value} needs --p >= {family.min_p}")
        g, pred = build(family, args.p)
        constraint = ConstraintSpec(family.max_degree, pred.diameter)
        prediction = pred.to_dict()

    report = verify(g, constraint)
    ok = report.satisfies and report.order == prediction["order"] and report.diameter_observed == prediction["diameter"]
    ok = ok and check_sandwich(g, constraint)
    text = to_dot(g, name=args.family.replace("-", "_")) if args.format == "dot" else dump_graph(g, {"prediction": prediction})
    summary = {"prediction": prediction, "report": report.to_dict(), "sandwich": check_sandwich(g, constraint)}
    if args.output:
        Path(args.output).write_text(text)
        _emit(summary)
    else:
        sys.stdout.write(text)
        print(json.dumps(summary, sort_keys=True), file=sys.stderr)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        text = Path(args.input).read_text() if args.input != "-" else sys.stdin.read()
    except OSError as exc:
        return _usage_error(f"cannot read {args.input}: {exc.strerror}")
    try:
        g, _ = parse_graph(text)
    except GraphParseError as exc:
        print(f"meshddbs: parse error at {exc}", file=sys.stderr)
        return EXIT_USAGE
    constraint = ConstraintSpec(args.max_degree, args.diameter)
    report = verify(g, constraint)
    _emit(report.to_dict())
    return EXIT_OK if report.satisfies else EXIT_FALSE


def cmd_search(args: argparse.Namespace) -> int:
    constraint = ConstraintSpec(args.max_degree, args.diameter)
    try:
        constraint.check_dimension(args.dim)
    except ValueError as exc:
        return _usage_error(str(exc))
    max_nodes = args.max_nodes if args.max_nodes is not None else _env_budget()
    budget = SearchBudget(max_nodes=max_nodes, time_limit=args.time_limit, threads=args.threads)

    if args.mode == "exact":
        state = None
        if args.checkpoint and args.resume and Path(args.checkpoint).exists():
            try:
                state = load_checkpoint(args.checkpoint)
                result = exact_search(args.dim, constraint, budget, resume=state)
            except CheckpointError as exc:
                return _usage_error(str(exc))
        else:
            result = exact_search(args.dim, constraint, budget)
        if args.checkpoint and result.checkpoint is not None:
            save_checkpoint(result.checkpoint, args.checkpoint)
    else:
        result = heuristic_search(args.dim, constraint, seed=args.seed, budget=budget)

    report = verify(result.witness, constraint)
    summary = {
        "best_order": result.best_order,
        "exact": result.exact,
        "mode": args.mode,
        "nodes_explored": result.nodes_explored,
        "upper_bound_used": result.upper_bound_used,
        "verified": report.satisfies,
        "sandwich": check_sandwich(result.witness, constraint),
    }
    if args.mode == "heuristic":
        summary["seed"] = args.seed
    if args.timing:
        summary["elapsed"] = round(result.elapsed, 3)
    if args.output:
        meta = {"instance": {"dim": args.dim, "max_degree": args.max_degree, "diameter": args.diameter},
                "exact": result.exact}
        Path(args.output).write_text(dump_graph(result.witness, meta))
    _emit(summary)
    if not report.satisfies:
        return EXIT_FALSE
    return EXIT_OK if result.exact else EXIT_INEXACT


def cmd_bounds(args: argparse.Namespace) -> int:
    constraint = ConstraintSpec(args.max_degree, args.diameter)
    try:
        constraint.check_dimension(args.dim)
    except ValueError as exc:
        return _usage_error(str(exc))
    D = args.diameter
    spec = BallSpec.from_diameter(args.dim, D)
    moore = moore_bound(args.max_degree, D)
    ball = ball_size_closed(spec)
    out: dict = {"moore": moore, "ball": ball, "upper": min(moore, ball)}
    family = family_for(args.dim, args.max_degree, D)
    if family is not None:
        out["lower"] = predict(family, D // 2).order
        out["lower_source"] = family.value
    elif args.max_degree >= 2 * args.dim:
        out["lower"] = ball
        out["lower_source"] = "ball"
    else:
        out["lower"] = D + 1 if args.max_degree >= 2 else min(D + 1, 2)
        out["lower_source"] = "path"
    if args.dim == 2 and args.max_degree == 3 and D in LITERATURE_K2_DELTA3:
        known, upper = LITERATURE_K2_DELTA3[D]
        out["literature"] = {"largest_known": known, "upper": upper}
    if args.format == "json":
        _emit(out)
        return EXIT_OK
    print(f"moore: {moore}")
    print(f"ball: {ball}")
    print(f"upper: {out['upper']}")
    print(f"lower: {out['lower']} ({out['lower_source']})")
    if "literature" in out:
        print(f"literature: largest known {out['literature']['largest_known']}, upper {out['literature']['upper']}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="meshddbs", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ball", help="lattice points in a maximal L1 ball")
    p.add_argument("--dim", type=_nonneg, required=True)
    p.add_argument("--radius", type=_nonneg, required=True)
    p.add_argument("--parity", choices=["even", "odd"], default="even")
    p.add_argument("--method", choices=["closed", "recurrence", "enumerate", "series"], default="closed")
    p.add_argument("--budget", type=_positive, default=10**7, help="vertex cap for --method enumerate")
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("table", help="ball sizes for k = 0..max-dim, p = 0..max-radius")
    p.add_argument("--max-dim", type=_nonneg, default=4)
    p.add_argument("--max-radius", type=_nonneg, default=8)
    p.add_argument("--parity", choices=["even", "odd"], default="even")
    p.add_argument("--format", choices=["csv", "markdown"], default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("construct", help="build and certify an explicit construction")
    p.add_argument("--family", choices=[f.value for f in Family] + ["ball"], required=True)
    p.add_argument("--p", type=_nonneg, required=True)
    p.add_argument("--dim", type=_positive, help="dimension, for --family ball")
    p.add_argument("--parity", choices=["even", "odd"], default="even", help="for --family ball")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--output", "-o", help="graph file (default: stdout, with the summary on stderr)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="certify a graph file against degree and diameter limits")
    p.add_argument("--input", "-i", required=True, help="interchange JSON file, or - for stdin")
    p.add_argument("--max-degree", type=_positive, required=True)
    p.add_argument("--diameter", type=_nonneg, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="exact or heuristic search for the largest subgraph")
    p.add_argument("--dim", type=_positive, required=True)
    p.add_argument("--max-degree", type=_positive, required=True)
    p.add_argument("--diameter", type=_nonneg, required=True)
    p.add_argument("--mode", choices=["exact", "heuristic"], default="exact")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-limit", type=float, help="wall-clock seconds")
    p.add_argument("--max-nodes", type=_positive, help="branch-node cap (default: $MESHDDBS_BUDGET or 10^8)")
    p.add_argument("--threads", type=_positive, help="worker threads (default: all cores)")
    p.add_argument("--checkpoint", help="state file written when the search stops")
    p.add_argument("--resume", action="store_true", help="continue from --checkpoint if it exists")
    p.add_argument("--output", "-o", help="witness graph file")
    p.add_argument("--timing", action="store_true", help="include elapsed seconds in the summary")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bounds", help="upper and lower bounds for an instance")
    p.add_argument("--dim", type=_positive, required=True)
    p.add_argument("--max-degree", type=_positive, required=True)
    p.add_argument("--diameter", type=_nonneg, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ValueError as exc:
        return _usage_error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
