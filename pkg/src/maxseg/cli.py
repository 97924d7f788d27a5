"""Command-line interface: solve 1D/2D problems, penalties, hulls, experiments.

Exit codes: 0 success, 2 usage or input error, 1 internal error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .core1d import max_subarray, max_subarray_constrained, max_subarray_penalized
from .core2d import detect_regions
from .expfam import make_model, penalty_from_prior
from .experiments import ConfigError, run_experiment_file
from .frontier import hull_check, solve_with_length_budget
from .pgm import read_pgm
from .rng import RNG_ALGORITHM


def read_weights_text(text: str) -> list[float]:
    """Parse 1D weights: one number per line, or comma-separated, '.' decimal."""
    values: list[float] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.strip()
        if not body:
            continue
        for token in body.split(","):
            token = token.strip()
            try:
                x = float(token)
            except ValueError:
                raise ValueError(f"line {lineno}: not a number: {token!r}") from None
            if not math.isfinite(x):
                raise ValueError(f"line {lineno}: non-finite value: {token}")
            values.append(x)
    if not values:
        raise ValueError("no values found in input")
    return values


def read_matrix_csv(text: str) -> np.ndarray:
    """Parse a 2D matrix from comma-separated rows."""
    rows: list[list[float]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.strip()
        if not body:
            continue
        row = []
        for token in body.split(","):
            token = token.strip()
            try:
                x = float(token)
            except ValueError:
                raise ValueError(f"line {lineno}: not a number: {token!r}") from None
            if not math.isfinite(x):
                raise ValueError(f"line {lineno}: non-finite value: {token}")
            row.append(x)
        if rows and len(row) != len(rows[0]):
            raise ValueError(f"line {lineno}: expected {len(rows[0])} columns, got {len(row)}")
        rows.append(row)
    if not rows:
        raise ValueError("no rows found in input")
    return np.asarray(rows)


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _cmd_solve1d(args) -> int:
    w = read_weights_text(_read_text(args.input))
    if args.budget is not None:
        result = solve_with_length_budget(w, args.budget)
        sol, delta = result.solution, result.delta_used
    elif args.delta is not None:
        sol = max_subarray_penalized(w, args.delta)
        delta = args.delta
    else:
        sol = max_subarray(w)
        delta = 0.0
    print(json.dumps({
        "interval": [sol.interval.lo, sol.interval.hi],
        "raw_weight": sol.raw_weight,
        "penalized_weight": sol.penalized_weight,
        "delta": delta,
    }))
    return 0


def _cmd_penalty(args) -> int:
    model = make_model(args.family, sigma=args.sigma, shape=args.shape)
    delta = penalty_from_prior(model, args.mu0, args.delta_mu)
    print(f"{delta:.12g}")
    return 0


def _cmd_detect2d(args) -> int:
    if args.format == "csv":
        matrix = read_matrix_csv(_read_text(args.input))
    else:
        pixels, _ = read_pgm(args.input)
        matrix = pixels.astype(float)
    if args.background:
        matrix = matrix - args.background
    regions = detect_regions(matrix, args.delta, args.max_regions)
    print(json.dumps([
        {
            "rect": [r.rect.top, r.rect.left, r.rect.bottom, r.rect.right],
            "raw_weight": r.raw_weight,
        }
        for r in regions
    ]))
    return 0


def _cmd_hull(args) -> int:
    w = read_weights_text(_read_text(args.input))
    report = hull_check(w)
    out = sys.stdout
    out.write("K,length,raw_weight,on_hull,is_vertex,attained_by_delta\n")
    for row in report.rows:
        attained = "" if row.attained_by_delta is None else repr(row.attained_by_delta)
        out.write(
            f"{row.k},{row.length},{row.raw_weight!r},"
            f"{'true' if row.on_hull else 'false'},"
            f"{'true' if row.is_vertex else 'false'},{attained}\n"
        )
    return 0


def _cmd_experiment(args) -> int:
    result = run_experiment_file(args.config, args.out, threads=args.threads)
    print(f"wrote {result.csv_path} and {result.metadata_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxseg",
        description="Localize elevated-mean intervals and rectangles in noisy data.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"maxseg {__version__} (rng: {RNG_ALGORITHM})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve1d", help="best interval of a 1D weight file")
    p.add_argument("input", help="text file: one number per line or comma-separated")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--delta", type=float, help="penalty subtracted from every element")
    mode.add_argument("--budget", type=int, metavar="K", help="maximum interval length")
    p.set_defaults(func=_cmd_solve1d)

    p = sub.add_parser("penalty", help="optimal penalty from means")
    p.add_argument("--family", required=True, choices=["gaussian", "poisson", "gamma", "bernoulli"])
    p.add_argument("--mu0", type=float, required=True, help="background mean")
    p.add_argument("--delta-mu", type=float, required=True, dest="delta_mu",
                   help="expected mean difference (positive)")
    p.add_argument("--sigma", type=float, default=1.0, help="gaussian sigma")
    p.add_argument("--shape", type=float, default=1.0, help="gamma shape")
    p.set_defaults(func=_cmd_penalty)

    p = sub.add_parser("detect2d", help="iteratively detect elevated rectangles")
    p.add_argument("input", help="PGM (P2/P5) image, or CSV matrix with --format csv")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--max-regions", type=int, required=True, dest="max_regions")
    p.add_argument("--background", type=float, default=0.0,
                   help="scalar subtracted from every pixel before detection")
    p.add_argument("--format", choices=["pgm", "csv"], default="pgm")
    p.set_defaults(func=_cmd_detect2d)

    p = sub.add_parser("hull", help="budget frontier with convex-hull flags as CSV")
    p.add_argument("input", help="text file as for solve1d")
    p.set_defaults(func=_cmd_hull)

    p = sub.add_parser("experiment", help="run a Monte Carlo experiment config")
    p.add_argument("config", help="JSON experiment config")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"error: {problem}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
