"""Command-line interface: ``cauchy-deriv {derive,scan,radius,nodes,table}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Optional

import numpy as np

from . import budget, radius as radius_mod
from .driver import DriverConfig, derivative, digit_loss_estimate, taylor_coefficient
from .errors import CauchyError
from .expr import as_function, parse
from .quad import AnalyticFunction, Status
from .scaled import ScaledComplex, format_scaled, relative_difference
from .sfun import lookup
from .tables import TABLES, UNIT_ROUNDOFF

FORMATS = ("text", "json", "csv")
RADIUS_METHODS = ("auto", "nonneg", "saddle", "prg", "darboux", "scan")


class UsageError(CauchyError):
    pass


# ---------------------------------------------------------- rendering

def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, ScaledComplex):
        return format_scaled(x)
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.17g}"
    if isinstance(x, complex):
        return f"{x.real:.17g}{x.imag:+.17g}j"
    return str(x)


def _json_value(x):
    if isinstance(x, float) and not math.isfinite(x):
        return _fmt(x)
    if isinstance(x, (ScaledComplex, complex)):
        return _fmt(x)
    return x


def emit_record(record: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps({k: _json_value(v) for k, v in record.items()}) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(list(record))
        w.writerow([_fmt(v) for v in record.values()])
    else:
        width = max(len(k) for k in record)
        for k, v in record.items():
            out.write(f"{k:<{width}}  {_fmt(v)}\n")


def emit_table(header, rows, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps([{h: _json_value(v) for h, v in zip(header, row)} for row in rows]) + "\n")
        return
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
        return
    cells = [list(header)] + [[_fmt(v) for v in row] for row in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(header))]
    for c in cells:
        out.write("  ".join(s.rjust(w) for s, w in zip(c, widths)) + "\n")


# ----------------------------------------------------- function input

def resolve_function(args):
    """Return ``(AnalyticFunction, catalog entry or None)`` from --fn / --expr."""
    if getattr(args, "fn", None):
        entry = lookup(args.fn)
        return entry.function, entry
    R = args.R if getattr(args, "R", None) is not None else math.inf
    f = as_function(parse(args.expr), radius_of_convergence=R)
    overrides = {}
    for key, attr in (("rho", "order"), ("tau", "type_"), ("beta", "darboux_beta")):
        val = getattr(args, key, None)
        if val is not None:
            overrides[attr] = val
    if getattr(args, "nonneg", False):
        overrides["nonnegative_coefficients"] = True
    if overrides:
        from dataclasses import replace
        f = replace(f, **overrides)
    return f, None


def _plan_for(f: AnalyticFunction, entry, n: int, method: str, cfg: DriverConfig):
    exact = entry.coefficient(n) if entry is not None and entry.oracle is not None else None
    if method == "auto":
        return radius_mod.auto_radius(f, n, exact, cfg)
    if method == "nonneg":
        return radius_mod.radius_nonneg_convex(f, n)
    if method == "saddle":
        if not f.is_entire:
            raise UsageError("saddle method needs an entire function")
        return radius_mod.radius_saddle(f, n)
    if method == "prg":
        if f.order is None or f.type_ is None:
            raise UsageError("prg method needs order and type (--rho, --tau)")
        return radius_mod.radius_prg_asymptotic(n, f.order, f.type_)
    if method == "darboux":
        if f.darboux_beta is None or f.is_entire:
            raise UsageError("darboux method needs a finite --R and --beta")
        return radius_mod.radius_darboux(n, f.darboux_beta, f.radius_of_convergence)
    R = f.radius_of_convergence
    lo, hi = (R * 1e-3, R * (1 - 1e-6)) if math.isfinite(R) else (1e-2, 10.0 * (n + 1))
    return radius_mod.optimal_radius_empirical(f, exact, n, lo, hi, cfg)


def _has_real_coefficients(f: AnalyticFunction, entry) -> bool:
    """Known for catalog entries; for expressions test ``f(conj z) == conj f(z)``."""
    if entry is not None:
        return f.real_coefficients
    R = f.radius_of_convergence
    rad = 0.5 * R if math.isfinite(R) else 0.5
    z = rad * np.exp(1j * np.array([0.3, 1.1, 2.0]))
    try:
        a, b = f(z), f(np.conj(z))
    except CauchyError:
        return False
    return bool(np.all(np.abs(b - np.conj(a)) <= 1e-12 * np.maximum(np.abs(a), 1e-300)))


def _display_value(value: ScaledComplex, real: bool) -> ScaledComplex:
    # the imaginary part of a real coefficient is pure round-off
    if real and not value.is_zero():
        return ScaledComplex.from_parts(complex(value.mantissa.real, 0.0), value.exponent)
    return value


# ---------------------------------------------------------- commands

def cmd_derive(args, out) -> int:
    if args.r is not None and args.radius_method is not None:
        raise UsageError("--r and --radius-method are mutually exclusive")
    f, entry = resolve_function(args)
    cfg = DriverConfig(tol=args.tol, m_max=args.m_max)
    if args.r is not None:
        plan = radius_mod.fixed_plan(f, args.n, args.r)
    else:
        plan = _plan_for(f, entry, args.n, args.radius_method or "auto", cfg)
    run = taylor_coefficient if args.coefficient else derivative
    outcome = run(f, args.n, plan.radius, cfg)
    value = _display_value(outcome.value, _has_real_coefficients(f, entry))
    predicted = plan.predicted_digit_loss
    record = {
        "value": value,
        "quantity": "coefficient" if args.coefficient else "derivative",
        "n": args.n,
        "kappa": outcome.kappa_m,
        "m_used": outcome.m_used,
        "radius": plan.radius,
        "strategy": plan.strategy.value,
        "digit_loss_predicted": predicted,
        "digit_loss": digit_loss_estimate(outcome.kappa_m),
        "rel_error_estimate": outcome.rel_error_estimate,
        "status": outcome.status.value,
    }
    if entry is not None and entry.oracle is not None:
        exact = entry.coefficient(args.n)
        if not exact.is_zero():
            coeff = outcome.value if args.coefficient else outcome.value.scale_log(-math.lgamma(args.n + 1))
            err = relative_difference(coeff, exact)
            record["rel_error_vs_exact"] = err
            record["digit_loss_observed"] = math.log10(err / UNIT_ROUNDOFF) if err > 0 else 0.0
    if math.isfinite(outcome.kappa_m) and outcome.kappa_m * args.tol >= 1:
        record["warning"] = "kappa * tol >= 1: no significant digits can be expected"
    if plan.warning:
        record["plan_warning"] = plan.warning
    emit_record(record, args.format, out)
    return 0 if outcome.status is Status.CONVERGED else 1


def cmd_scan(args, out) -> int:
    f, entry = resolve_function(args)
    exact = None
    if args.oracle:
        if entry is None or entry.oracle is None:
            raise UsageError("--oracle needs a catalog function with a coefficient oracle")
        exact = entry.coefficient(args.n)
    curve = radius_mod.scan_condition(f, exact, args.n, args.rmin, args.rmax, args.points,
                                      DriverConfig(tol=args.tol, m_max=args.m_max))
    rows = [(r, k, digit_loss_estimate(k)) for r, k in curve.entries]
    emit_table(("r", "kappa", "digit_loss"), rows, "csv" if args.format == "text" else args.format, out)
    return 0


def cmd_radius(args, out) -> int:
    f, entry = resolve_function(args)
    plan = _plan_for(f, entry, args.n, args.method, DriverConfig())
    record = {
        "radius": plan.radius,
        "strategy": plan.strategy.value,
        "saddle_point": plan.saddle_point,
        "predicted_nodes": plan.predicted_nodes,
        "predicted_digit_loss": plan.predicted_digit_loss,
    }
    if plan.warning:
        record["warning"] = plan.warning
    emit_record(record, args.format, out)
    return 0


def cmd_nodes(args, out) -> int:
    have = {k for k in ("r", "R", "rho", "tau", "n", "beta", "alpha") if getattr(args, k) is not None}
    if have == {"r", "R"}:
        b = budget.nodes_finite_R(args.eps, args.r, args.R)
    elif have == {"r", "rho", "tau"}:
        b = budget.nodes_entire(args.eps, args.r, args.rho, args.tau)
    elif have == {"n", "rho"}:
        b = budget.nodes_prg_quasioptimal(args.eps, args.n, args.rho)
    elif have in ({"n", "beta"}, {"n", "beta", "alpha"}):
        b = budget.nodes_darboux(args.eps, args.n, args.beta, args.alpha)
    else:
        raise UsageError("give one of: --r --R | --r --rho --tau | --n --rho | --n --beta [--alpha]")
    n = args.n if args.n is not None else 0
    record = {
        "regime": b.regime.value,
        "m_estimate": b.m_estimate,
        "recommendation": max(b.recommendation, n + 1),
        "note": "asymptotic estimate",
    }
    emit_record(record, args.format, out)
    return 0


def cmd_table(args, out) -> int:
    header, rows = TABLES[args.name]()
    emit_table(header, rows, "csv" if args.format == "text" else args.format, out)
    return 0


# ------------------------------------------------------------- parser

def _add_function_args(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--fn", help="catalog function, e.g. exp, airy_ai, f_beta:-1")
    g.add_argument("--expr", help="expression in z, e.g. 'z/(exp(z)-1)'")
    p.add_argument("--R", type=float, help="radius of convergence of --expr (default: entire)")
    p.add_argument("--rho", type=float, help="order of --expr")
    p.add_argument("--tau", type=float, help="type of --expr")
    p.add_argument("--beta", type=float, help="exponent of the singularity of --expr on |z| = R")
    p.add_argument("--nonneg", action="store_true", help="--expr has nonnegative Taylor coefficients")
    p.add_argument("--n", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cauchy-deriv",
                                     description="Taylor coefficients and derivatives via Cauchy integrals.")
    parser.add_argument("--format", choices=FORMATS, default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)

    p = sub.add_parser("derive", parents=[fmt], help="compute f^(n)(0) or a_n")
    _add_function_args(p)
    p.add_argument("--r", type=float, help="fixed radius")
    p.add_argument("--radius-method", choices=RADIUS_METHODS)
    p.add_argument("--tol", type=float, default=1e-15)
    p.add_argument("--m-max", type=int, default=2 ** 20)
    p.add_argument("--coefficient", action="store_true", help="print a_n instead of f^(n)(0)")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("scan", parents=[fmt], help="condition number along log-spaced radii (CSV)")
    _add_function_args(p)
    p.add_argument("--rmin", type=float, required=True)
    p.add_argument("--rmax", type=float, required=True)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--oracle", action="store_true", help="use the exact coefficient for kappa")
    p.add_argument("--tol", type=float, default=1e-15)
    p.add_argument("--m-max", type=int, default=2 ** 20)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("radius", parents=[fmt], help="select a radius")
    _add_function_args(p)
    p.add_argument("--method", choices=RADIUS_METHODS, default="auto")
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("nodes", parents=[fmt], help="estimate the number of nodes")
    p.add_argument("--eps", required=True, help="relative accuracy, may be below double range (1e-1000)")
    for name, typ in (("--r", float), ("--R", float), ("--rho", float), ("--tau", float),
                      ("--n", int), ("--beta", float), ("--alpha", float)):
        p.add_argument(name, type=typ)
    p.set_defaults(func=cmd_nodes)

    p = sub.add_parser("table", parents=[fmt], help="regenerate a published table (CSV)")
    p.add_argument("name", choices=sorted(TABLES))
    p.set_defaults(func=cmd_table)
    return parser


def main(argv: Optional[list] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (CauchyError, ValueError, ArithmeticError) as exc:
        print(f"cauchy-deriv: error: {exc}", file=sys.stderr)
        return 2


def run(argv: list) -> tuple:
    """Run the CLI in-process; returns ``(exit code, stdout text)``."""
    buf = io.StringIO()
    try:
        code = main(argv, buf)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
