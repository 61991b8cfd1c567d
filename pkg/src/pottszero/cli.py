"""Command-line front end.

Subcommands: exact (partition polynomial + evaluation table), verify
(bound sweeps), scan (complex zeros), interpolate (approximate coloring
counts), gen (graph construction).  Exit codes: 0 success, 2 usage or
parse error, 3 resource limit, 4 regime violation under --strict.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .errors import (
    BudgetExceededError,
    CannotInterpolateError,
    GraphFormatError,
    PottsError,
)
from .exact import evaluate, partition_poly
from .families import enumerate_graphs, generate_family, rooted_family
from .graphs import format_graph, parse_graph_text
from .interpolate import approx_count_colorings, exact_count_oracle
from .zeros import zero_free_scan
from . import bounds as bounds_mod

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_REGIME = 4


def _config_echo(args) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    return {"version": __version__, "config": cfg}


def _write_output(payload: dict, path: str | None, fmt: str = "json"):
    if fmt == "json":
        text = json.dumps(payload, indent=2, default=str) + "\n"
        if path:
            _atomic_write(path, text)
        else:
            sys.stdout.write(text)
        return
    # csv: payload must carry "rows" (list of dicts) and "columns"
    rows, columns = payload["rows"], payload["columns"]
    if path:
        with tempfile.NamedTemporaryFile(
            "w", dir=os.path.dirname(path) or ".", delete=False, newline=""
        ) as fh:
            writer = csv.DictWriter(fh, fieldnames=columns, extrasaction="ignore")
            writer.writeheader()
            writer.writerows(rows)
            tmp = fh.name
        os.replace(tmp, path)
    else:
        writer = csv.DictWriter(sys.stdout, fieldnames=columns, extrasaction="ignore")
        writer.writeheader()
        writer.writerows(rows)


def _atomic_write(path: str, text: str):
    with tempfile.NamedTemporaryFile("w", dir=os.path.dirname(path) or ".", delete=False) as fh:
        fh.write(text)
        tmp = fh.name
    os.replace(tmp, path)


def _load_graph(path: str, q: int | None):
    with open(path) as fh:
        g = parse_graph_text(fh.read())
    if q is not None and q != g.q:
        from .graphs import PartiallyColoredGraph

        g = PartiallyColoredGraph(g.n, g.edges, q, dict(g.pins))
    return g


def _parse_w_grid(spec: str):
    return [Fraction(tok) for tok in spec.split(",") if tok]


def cmd_exact(args) -> int:
    try:
        g = _load_graph(args.input, args.q)
    except (OSError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        poly = partition_poly(g)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    grid = _parse_w_grid(args.w) if args.w else []
    payload = _config_echo(args)
    payload["coefficients"] = [str(c) for c in poly.coefficients]
    payload["evaluations"] = {str(w): str(evaluate(poly, w)) for w in grid}
    _write_output(payload, args.output, "json")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.bound == "all":
        bound_ids = bounds_mod.registered_bounds()
    elif args.bound in bounds_mod.registered_bounds():
        bound_ids = (args.bound,)
    else:
        print(f"error: unknown bound {args.bound!r}", file=sys.stderr)
        return EXIT_USAGE
    grid = _parse_w_grid(args.w) if args.w else [Fraction(k, 10) for k in range(11)]
    graphs = list(enumerate_graphs(args.nmax, args.delta, args.q, pin_specs=args.pins))
    family = list(rooted_family(graphs, args.delta))
    family_name = f"nmax={args.nmax},delta={args.delta},q={args.q},pins={args.pins}"
    reports = []
    if args.jobs > 1 and len(bound_ids) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = [
                pool.submit(
                    bounds_mod.verify_bound, bid, family, grid, args.delta, family_name
                )
                for bid in bound_ids
            ]
            reports = [f.result() for f in futures]
    else:
        reports = [
            bounds_mod.verify_bound(bid, family, grid, args.delta, family_name)
            for bid in bound_ids
        ]
    payload = _config_echo(args)
    payload["reports"] = [r.to_dict() for r in reports]
    if args.format == "csv":
        columns = [
            "bound_id",
            "family",
            "instances_checked",
            "violations",
            "skipped",
            "worst_slack",
            "out_of_regime",
        ]
        _write_output({"rows": [r.to_dict() for r in reports], "columns": columns}, args.output, "csv")
    else:
        _write_output(payload, args.output, "json")
    violations = sum(r.violations for r in reports if not r.out_of_regime)
    out_of_regime = any(r.out_of_regime for r in reports)
    if out_of_regime:
        print("warning: some checks ran out of regime", file=sys.stderr)
        if args.strict:
            return EXIT_REGIME
    return EXIT_OK if violations == 0 else 1


def cmd_scan(args) -> int:
    if args.input:
        try:
            graphs = [_load_graph(args.input, args.q)]
        except (OSError, GraphFormatError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        graphs = list(enumerate_graphs(args.nmax, args.delta, args.q, pin_specs=args.pins))
    try:
        summary = zero_free_scan(graphs, args.q, args.delta)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    payload = _config_echo(args)
    payload["family_min_dist"] = summary.family_min_dist
    payload["out_of_regime"] = summary.out_of_regime
    payload["reports"] = [r.to_dict() for r in summary.reports]
    if args.format == "csv":
        rows = [
            {
                "graph_id": r.graph_id,
                "degree": len(r.roots),
                "min_dist": r.min_dist_to_interval,
            }
            for r in summary.reports
        ]
        _write_output({"rows": rows, "columns": ["graph_id", "degree", "min_dist"]}, args.output, "csv")
    else:
        _write_output(payload, args.output, "json")
    print(f"family min distance to [0,1]: {summary.family_min_dist}")
    if summary.out_of_regime and args.strict:
        return EXIT_REGIME
    return EXIT_OK


def cmd_interpolate(args) -> int:
    try:
        g = _load_graph(args.input, args.q)
    except (OSError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        est = approx_count_colorings(g, args.eps, check=args.check)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except CannotInterpolateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REGIME
    payload = _config_echo(args)
    payload["estimate"] = est.to_dict()
    _write_output(payload, args.output, "json")
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        params = {}
        if args.n is not None:
            params["n"] = args.n
        if args.d is not None:
            params["d"] = args.d
        if args.a is not None:
            params["a"] = args.a
        if args.b is not None:
            params["b"] = args.b
        params["seed"] = args.seed
        g = generate_family(args.kind, args.q, **params)
    except (GraphFormatError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = format_graph(g)
    if args.output:
        _atomic_write(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pottszero",
        description="Exact Potts partition functions, marginal bounds, zero scans "
        "and approximate coloring counts on small graphs.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--output", help="output file (default stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--strict", action="store_true", help="regime violations exit 4")
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("exact", help="exact partition polynomial")
    p.add_argument("--input", required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--w", help="comma-separated rational w values to evaluate")
    common(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", help="sweep a bound over an enumerated family")
    p.add_argument("--bound", default="all")
    p.add_argument("--all", action="store_const", const="all", dest="bound")
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--delta", type=int, default=3)
    p.add_argument("--q", type=int, default=6)
    p.add_argument("--pins", choices=("none", "single", "patterns"), default="patterns")
    p.add_argument("--w", help="comma-separated rational w grid")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="complex zeros and distance to [0,1]")
    p.add_argument("--input")
    p.add_argument("--family", default="all")
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--delta", type=int, default=3)
    p.add_argument("--q", type=int, default=6)
    p.add_argument("--pins", choices=("none", "single", "patterns"), default="none")
    common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("interpolate", help="approximate number of proper colorings")
    p.add_argument("--input", required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--eps", type=float, default=0.01)
    p.add_argument("--check", action="store_true", help="compare against the exact oracle")
    common(p)
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("gen", help="emit a named graph as an edge list")
    p.add_argument("--kind", required=True)
    p.add_argument("--q", type=int, default=6)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors already; --version/-h use 0
        raise
    try:
        return args.func(args)
    except PottsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
