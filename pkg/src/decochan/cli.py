"""Command-line front end.

Subcommands
-----------
capacity : closed-form capacity at one parameter point, optionally confirmed
           by the simplex maximizer.
curve    : CSV sweep of a capacity curve over x.
figures  : reproduce the d=12 capacity figures (CSV + SVG).
verify   : run the structural verification suite.

Exit codes: 0 success, 1 verification failure, 2 bad arguments, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .capacity import compute_capacity
from .channels import ChannelSpec, FAMILIES
from .errors import ToolkitError
from .report import CSV_HEADER, CurveRow, row_to_csv, sweep


def _add_spec_args(parser, with_x=True):
    parser.add_argument("--family", required=True, choices=FAMILIES)
    parser.add_argument("--d", required=True, type=int, help="Hilbert-space dimension")
    parser.add_argument("--k", type=int, default=1, help="block/window size (default 1)")
    if with_x:
        parser.add_argument("--x", required=True, type=float, help="noise parameter in [0,1]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="decochan",
        description="Capacities and verification of decohering quantum channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", help="capacity at a single parameter point")
    _add_spec_args(p)
    p.add_argument("--numeric", action="store_true", help="also run the simplex maximizer")
    p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    p.add_argument("--tol", type=float, default=1e-9, help="optimizer objective tolerance")

    p = sub.add_parser("curve", help="CSV sweep of a capacity curve over x")
    _add_spec_args(p, with_x=False)
    p.add_argument("--x-steps", type=int, default=101, help="number of x samples (>= 2)")
    p.add_argument("--numeric", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("figures", help="emit fig1/fig2 CSV and SVG for d=12")
    p.add_argument("--out-dir", default="figures")
    p.add_argument("--d", type=int, default=12)
    p.add_argument("--x-steps", type=int, default=101)

    p = sub.add_parser("verify", help="run the structural verification suite")
    p.add_argument("--max-d", type=int, default=4)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-failure", action="store_true", help=argparse.SUPPRESS)

    return parser


def _row_dict(row: CurveRow) -> dict:
    return {
        "family": row.family,
        "d": row.d,
        "k": row.k,
        "x": row.x,
        "q_closed": row.q_closed,
        "q_numeric": row.q_numeric,
        "gap": row.gap,
    }


def _emit_rows(rows, as_json: bool, out) -> None:
    if as_json:
        json.dump([_row_dict(r) for r in rows], out, indent=2)
        out.write("\n")
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row_to_csv(row))


def cmd_capacity(args, out) -> int:
    spec = ChannelSpec(args.family, args.d, args.x, args.k)
    res = compute_capacity(spec, numeric=args.numeric, tol=args.tol)
    row = CurveRow(args.family, args.d, args.k, args.x, res.q_closed, res.q_numeric, res.gap)
    if args.json:
        json.dump(_row_dict(row), out)
        out.write("\n")
    else:
        csv.writer(out, lineterminator="\n").writerow(row_to_csv(row))
    return 0


def cmd_curve(args, out) -> int:
    if args.x_steps < 2:
        raise ToolkitError(f"--x-steps must be >= 2, got {args.x_steps}")
    ChannelSpec(args.family, args.d, 0.0, args.k)  # validate the spec up front
    rows = sweep(args.family, args.d, args.k, args.x_steps, numeric=args.numeric, opt_tol=args.tol)
    _emit_rows(rows, args.json, out)
    return 0


def cmd_figures(args, out) -> int:
    from .report import make_figures

    try:
        paths = make_figures(args.out_dir, d=args.d, x_steps=args.x_steps)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    for name in sorted(paths):
        out.write(f"wrote {paths[name]}\n")
    return 0


def cmd_verify(args, out) -> int:
    from .verify import format_report, run_verification

    if args.max_d < 2:
        raise ToolkitError(f"--max-d must be >= 2, got {args.max_d}")
    report = run_verification(
        max_d=args.max_d,
        tol=args.tol,
        seed=args.seed,
        inject_failure=args.inject_failure,
    )
    out.write(format_report(report) + "\n")
    return 0 if report.passed else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "capacity": cmd_capacity,
        "curve": cmd_curve,
        "figures": cmd_figures,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args, sys.stdout)
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
