"""Command-line front-end: `slp solve|transform|invert|verify`.

Problems load from JSON files:

    {"form": "canonical",   "coefficients": {"p": "...", "q": "...", "r": "..."},
     "interval": [a, b], "bc": "dirichlet", "metadata": {...}}
    {"form": "schrodinger", "coefficients": {"invariant": "..."},
     "interval": [lo, hi], "bc": "dirichlet"}

Canonical coefficients are expressions in x, the invariant in t.  Results
go to stdout as deterministic JSON (17-significant-digit numbers, fixed key
order); diagnostics go to stderr.  Exit codes: 0 success, 2 rejected input
or failed validation, 3 numerical failure, 1 failed verification.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

from . import _serialize
from .errors import NumericalError
from .expr import parse as parse_expr
from .eigensolver import solve_spectrum
from .inverse import CASE_LABELS, build_case
from .liouville import forward_transform
from .problems import (CanonicalSLP, DIRICHLET, PaineSpec, SchrodingerSLP,
                       validate)
from .verify import spectral_match


class ProblemFileError(ValueError):
    pass


def load_problem(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as err:
        raise ProblemFileError(f"cannot read {path}: {err}") from None
    except json.JSONDecodeError as err:
        raise ProblemFileError(f"{path} is not valid JSON: {err}") from None
    if not isinstance(data, dict):
        raise ProblemFileError(f"{path}: top level must be an object")
    form = data.get("form")
    coeffs = data.get("coefficients")
    interval = data.get("interval")
    bc = data.get("bc", "dirichlet")
    if form not in ("canonical", "schrodinger"):
        raise ProblemFileError(f"{path}: form must be 'canonical' or 'schrodinger'")
    if not isinstance(coeffs, dict):
        raise ProblemFileError(f"{path}: coefficients must be an object")
    if (not isinstance(interval, (list, tuple)) or len(interval) != 2
            or not all(isinstance(v, (int, float)) for v in interval)):
        raise ProblemFileError(f"{path}: interval must be [lo, hi]")
    if bc != "dirichlet":
        raise ProblemFileError(f"{path}: only 'dirichlet' boundary conditions are supported")
    lo, hi = float(interval[0]), float(interval[1])
    if form == "canonical":
        missing = [key for key in ("p", "q", "r") if key not in coeffs]
        if missing:
            raise ProblemFileError(f"{path}: canonical form needs coefficients {missing}")
        problem = CanonicalSLP(
            p=parse_expr(str(coeffs["p"]), "x"),
            q=parse_expr(str(coeffs["q"]), "x"),
            r=parse_expr(str(coeffs["r"]), "x"),
            a=lo, b=hi, left=DIRICHLET, right=DIRICHLET)
    else:
        if "invariant" not in coeffs:
            raise ProblemFileError(f"{path}: schrodinger form needs coefficients.invariant")
        problem = SchrodingerSLP(
            invariant=parse_expr(str(coeffs["invariant"]), "t"),
            alpha=lo, beta=hi, left=DIRICHLET, right=DIRICHLET)
    bad = validate(problem)
    if bad:
        raise ProblemFileError(f"{path}: " + "; ".join(str(v) for v in bad))
    return problem


def _emit(payload: dict) -> None:
    sys.stdout.write(_serialize.dumps(payload) + "\n")


def _cmd_solve(args) -> int:
    problem = load_problem(args.file)
    spectrum = solve_spectrum(problem, args.n, args.count, richardson=args.richardson)
    form = "canonical" if isinstance(problem, CanonicalSLP) else "schrodinger"
    payload = {"form": form, "n": args.n, "count": args.count,
               "richardson": bool(args.richardson)}
    payload.update(_serialize.spectrum_dict(spectrum))
    _emit(payload)
    return 0


def _cmd_transform(args) -> int:
    problem = load_problem(args.file)
    if not isinstance(problem, CanonicalSLP):
        raise ProblemFileError("transform expects a canonical problem file")
    reduced, map_ = forward_transform(problem, args.quad_tol)
    samples = args.samples
    ts, values = [], []
    for i in range(samples):
        t = reduced.alpha + (reduced.beta - reduced.alpha) * i / (samples - 1)
        ts.append(t)
        values.append(reduced.invariant.evaluate(t))
    payload = {
        "alpha": reduced.alpha,
        "beta": reduced.beta,
        "left_bc": [reduced.left.d0, reduced.left.d1],
        "right_bc": [reduced.right.d0, reduced.right.d1],
        "samples": samples,
        "t": ts,
        "invariant": values,
    }
    _emit(payload)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["t", "invariant"])
            for t, v in zip(ts, values):
                writer.writerow([format(t, ".17g"), format(v, ".17g")])
        print(f"wrote {args.csv}", file=sys.stderr)
    return 0


def _spec_from_args(args) -> PaineSpec:
    return PaineSpec(args.k, args.m)


def _build_from_args(args):
    k34_branch = "power"
    branch = args.branch
    variant = args.variant
    if args.case == "case1" and variant in ("power", "exponential"):
        k34_branch = variant
    return build_case(
        args.case, _spec_from_args(args), q0=args.q0, r0=args.r0, C1=args.C1,
        x0=args.x0, branch=branch, k34_branch=k34_branch, n_r=args.nr)


def _cmd_invert(args) -> int:
    result = _build_from_args(args)
    _emit(_serialize.inverse_result_dict(result))
    for warning in result.validity.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return 0


def _cmd_verify(args) -> int:
    result = _build_from_args(args)
    report = spectral_match(result, _spec_from_args(args),
                            count=args.count, n=args.n)
    _emit(_serialize.report_dict(report))
    return 0 if report.passed else 1


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slp",
        description="Sturm-Liouville canonical/Schrodinger conversion toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="eigenvalues of a problem file")
    solve.add_argument("file")
    solve.add_argument("--n", type=int, default=1000)
    solve.add_argument("--count", type=int, default=5)
    solve.add_argument("--richardson", action="store_true")
    solve.set_defaults(func=_cmd_solve)

    transform = sub.add_parser("transform", help="canonical -> Schrodinger form")
    transform.add_argument("file")
    transform.add_argument("--quad-tol", type=float, default=1e-10, dest="quad_tol")
    transform.add_argument("--samples", type=int, default=201)
    transform.add_argument("--csv", default=None)
    transform.set_defaults(func=_cmd_transform)

    def add_case_args(cmd):
        cmd.add_argument("case", choices=list(CASE_LABELS))
        cmd.add_argument("--k", type=float, required=True)
        cmd.add_argument("--m", type=float, default=0.1)
        cmd.add_argument("--q0", type=float, default=None)
        cmd.add_argument("--r0", type=float, default=None)
        cmd.add_argument("--C1", type=float, default=None)
        cmd.add_argument("--x0", type=float, default=None)
        cmd.add_argument("--branch", choices=["plus", "minus"], default="plus")
        cmd.add_argument("--variant",
                         choices=["auto", "A1", "A2", "B", "C1", "C2",
                                  "power", "exponential"],
                         default="auto")
        cmd.add_argument("--nr", type=float, default=None)

    invert = sub.add_parser("invert", help="construct a canonical form")
    add_case_args(invert)
    invert.set_defaults(func=_cmd_invert)

    verify = sub.add_parser("verify", help="construct and check a canonical form")
    add_case_args(verify)
    verify.add_argument("--n", type=int, default=2000)
    verify.add_argument("--count", type=int, default=5)
    verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, TypeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except NumericalError as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
