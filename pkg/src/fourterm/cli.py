"""Command-line interface.

Every command writes one document, JSON (``meta`` plus ``data``) or CSV
(header row plus one record per row), to stdout or to ``--out``.  A relative
``--out`` path is resolved against ``$FOURTERM_OUTPUT_DIR`` when that is set.

Exit status:

    0   success
    1   the computation failed or contradicts the expected verdict
    2   usage error
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from . import theta as th
from .analysis import (
    TOL_MATCH,
    TOL_REAL,
    Hyperbolicity,
    check_hyperbolicity,
    density_sample,
    real_rooted_region,
    zero_report,
)
from .errors import FourTermError
from .recurrence import SequenceParams, generate_sequence
from .witness import Verdict, attraction_check, classify, witness_trace

OUTPUT_DIR_ENV = "FOURTERM_OUTPUT_DIR"

COMMANDS = ("gen", "zeros", "check", "classify", "scan", "curve", "density", "witness")


class UsageError(Exception):
    """Flag combination that parses but makes no sense."""


# -- argument parsing ---------------------------------------------------------


def _exact(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}")
    return value


def _positive(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text!r}")
    return value


def _range(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    lo, hi = (_exact(p) for p in parts)
    if not lo <= hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fourterm",
        description="Zeros of polynomials generated by 1/(1 + c t + b t^2 + z t^3).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--tol-real", type=_positive, default=TOL_REAL)
    common.add_argument("--tol-residual", type=_positive, default=TOL_MATCH)
    common.add_argument("--precision-bits", type=int, default=None)

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--a", type=_exact, help="normalized parameter b/c^2 (sets c = 1)")
    params.add_argument("--b", type=_exact)
    params.add_argument("--c", type=_exact)

    def add(name, help_text, parents):
        return sub.add_parser(name, help=help_text, parents=[common] + parents)

    p = add("gen", "coefficient table of H_0..H_m", [params])
    p.add_argument("--m", type=_nonneg_int, required=True)
    p = add("zeros", "zeros of H_m with realness flags", [params])
    p.add_argument("--m", type=_nonneg_int, required=True)
    p = add("check", "full hyperbolicity pipeline for one H_m", [params])
    p.add_argument("--m", type=_nonneg_int, required=True)
    p = add("classify", "reality verdict for (b, c)", [params])
    p.add_argument("--m-max", type=_nonneg_int, default=60, help="cap for the empirical search")
    p = add("scan", "verdicts on a grid of (b, c)", [])
    p.add_argument("--b-range", type=_range, default=(Fraction(-2), Fraction(2)))
    p.add_argument("--c-range", type=_range, default=(Fraction(-2), Fraction(2)))
    p.add_argument("--grid", type=_nonneg_int, default=41, help="points per axis")
    p = add("curve", "tabulate theta, zeta, z and g_m", [params])
    p.add_argument("--m", type=_nonneg_int, required=True)
    p.add_argument("--grid", type=_nonneg_int, default=200)
    p = add("density", "pooled zeros of H_0..H_M in a window", [params])
    p.add_argument("--m-max", type=_nonneg_int, required=True)
    p.add_argument("--window", type=_range, required=True)
    p = add("witness", "non-real witness search trace", [params])
    p.add_argument("--m-max", type=_nonneg_int, default=60)
    return parser


def _params(args) -> SequenceParams:
    if args.a is not None:
        if args.b is not None or args.c is not None:
            raise UsageError("give either --a or --b/--c, not both")
        return SequenceParams.normalized(float(args.a))
    if args.b is None or args.c is None:
        raise UsageError("parameters needed: --a, or both --b and --c")
    return SequenceParams(b=args.b, c=args.c)


def _float_params(params: SequenceParams) -> SequenceParams:
    b, c = params.as_floats()
    return SequenceParams(b=b, c=c, regime=params.regime)


# -- serialization ------------------------------------------------------------


def _clean(value):
    """Make a value JSON-safe: Fractions and numpy scalars to float, inf to null."""
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating, Fraction)):
        f = float(value)
        return f if math.isfinite(f) else None
    if isinstance(value, complex):
        return {"re": _clean(value.real), "im": _clean(value.imag)}
    return value


def _csv_text(rows: list[dict]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if v is None else (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()


def _meta(args) -> dict:
    config = {
        k: (f"{v[0]}:{v[1]}" if isinstance(v, tuple) else (str(v) if isinstance(v, Fraction) else v))
        for k, v in sorted(vars(args).items())
        if k not in ("tol_real", "tol_residual", "precision_bits", "format", "out")
    }
    return {
        "version": __version__,
        "command": args.command,
        "config": config,
        "tolerances": {
            "tol_real": args.tol_real,
            "tol_residual": args.tol_residual,
            "precision_bits": args.precision_bits,
        },
    }


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _render(args, data, rows) -> str:
    if args.format == "csv":
        return _csv_text([_clean(r) for r in rows])
    doc = {"meta": _meta(args), "data": _clean(data)}
    return json.dumps(doc, indent=2) + "\n"


# -- commands -----------------------------------------------------------------
# Each returns (data, rows, ok).  ``data`` feeds the JSON document and
# ``rows`` the CSV one; ``ok`` is False when the outcome contradicts the
# expected verdict.


def _cmd_gen(args):
    params = _float_params(_params(args))
    window = generate_sequence(params, args.m, precision_bits=args.precision_bits)
    polys, rows = [], []
    for m, p in enumerate(window):
        coeffs = [float(x) for x in p.as_float()] if not p.is_zero else []
        polys.append({"m": m, "degree": None if p.is_zero else int(p.degree), "coeffs": coeffs})
        rows += [{"m": m, "power": k, "coeff": c} for k, c in enumerate(coeffs)]
    return {"b": params.b, "c": params.c, "polynomials": polys}, rows, True


def _cmd_zeros(args):
    params = _float_params(_params(args))
    report = zero_report(params, args.m, tol_real=args.tol_real, precision_bits=args.precision_bits)
    rows = report.rows()
    data = {
        "m": args.m,
        "degree": None if report.degree == -math.inf else int(report.degree),
        "verdict": report.verdict.value,
        "zeros": rows,
    }
    return data, rows, True


def _cmd_check(args):
    exact = _params(args)
    params = _float_params(exact)
    report, gset = check_hyperbolicity(
        params,
        args.m,
        tol_real=args.tol_real,
        tol_match=args.tol_residual,
        precision_bits=args.precision_bits,
    )
    in_region = real_rooted_region(exact.b, exact.c)[0]
    in_interval = None if report.in_interval is None else bool(np.all(report.in_interval))
    window = generate_sequence(params, max(args.m, 3))
    data = {
        "m": args.m,
        "degree": None if report.degree == -math.inf else int(report.degree),
        "verdict": report.verdict.value,
        "expected": "Hyperbolic" if in_region else None,
        "all_in_interval": in_interval,
        "g_zero_count": None if gset is None else len(gset),
        "a_used": None if gset is None else gset.a_used,
        "max_match_residual": report.max_match_residual,
        "recurrence_residual": window.residual(max(args.m, 3)),
        "zeros": report.rows(),
    }
    ok = not in_region or (report.verdict is Hyperbolicity.HYPERBOLIC and in_interval is not False)
    return data, report.rows(), ok


def _witness_dict(w):
    if w is None:
        return None
    return {"z_star": w.z_star, "theta_star": w.theta_star, "delta": w.delta, "m_checked": w.m_checked}


def _cmd_classify(args):
    exact = _params(args)
    result = classify(_float_params(exact) if args.a is not None else exact, m_cap=args.m_max)
    data = {
        "b": float(exact.b),
        "c": float(exact.c),
        "a": exact.a,
        "verdict": result.verdict.value,
        "condition": result.condition.value,
        "endpoint": None if result.interval is None else result.interval.right_endpoint,
        "orientation": None if result.interval is None else result.interval.orientation.value,
        "witness": _witness_dict(result.witness),
        "empirical": result.empirical_label,
    }
    row = {k: v for k, v in data.items() if k != "witness"}
    z = None if result.witness is None else result.witness.z_star
    row.update({"z_star_re": None if z is None else z.real, "z_star_im": None if z is None else z.imag})
    return data, [row], True


def _grid(lo: Fraction, hi: Fraction, n: int) -> list[Fraction]:
    if n == 1:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _cmd_scan(args):
    if args.grid < 1:
        raise UsageError("--grid must be at least 1")
    rows = []
    for c in _grid(*args.c_range, args.grid):
        for b in _grid(*args.b_range, args.grid):
            ok, cond = real_rooted_region(b, c)
            rows.append(
                {
                    "b": b,
                    "c": c,
                    "b_exact": str(b),
                    "c_exact": str(c),
                    "verdict": (Verdict.ALL_REAL if ok else Verdict.NOT_ALL_REAL).value,
                    "condition": cond.value,
                }
            )
    counts = {v.value: sum(r["verdict"] == v.value for r in rows) for v in Verdict}
    return {"cells": rows, "counts": counts}, rows, True


def _cmd_curve(args):
    params = _float_params(_params(args))
    if args.grid < 1:
        raise UsageError("--grid must be at least 1")
    rows = []
    scale = params.zero_scale
    if params.c == 0:
        if params.b <= 0:
            raise UsageError("the c = 0 curve needs b > 0")
        lo, hi = th.CZERO_LO, th.CZERO_HI
    else:
        th._check_a(params.a)
        lo, hi = th.THETA_LO, th.THETA_HI
    for i in range(args.grid):
        t = lo + (hi - lo) * (i + 1) / (args.grid + 1)
        if params.c == 0:
            zt, g, z = th.czero_theta_functions(t, args.m)
        else:
            try:
                zt = th.zeta(params.a, t)
                g = th.g_m(params.a, t, args.m)
            except FourTermError:
                zt, g = math.inf, math.nan
            z = th.z_of_theta(params.a, t)
        rows.append({"theta": t, "zeta": zt, "z": z * scale, "g": g})
    return {"m": args.m, "rows": rows}, rows, True


def _cmd_density(args):
    params = _float_params(_params(args))
    lo, hi = args.window
    stats = density_sample(params, args.m_max, (float(lo), float(hi)), tol_real=args.tol_real)
    rows = [{"z": float(z)} for z in stats.points]
    data = {
        "m_max": args.m_max,
        "window": list(stats.window),
        "count": len(stats.points),
        "max_gap": stats.max_gap,
        "points": [float(z) for z in stats.points],
    }
    return data, rows, True


def _cmd_witness(args):
    params = _float_params(_params(args))
    if params.c == 0:
        raise UsageError("the witness construction needs c != 0")
    a = params.a
    trace = witness_trace(a)
    rows = [
        {
            "delta": s.delta,
            "theta": s.theta,
            "z_re": s.z.real,
            "z_im": s.z.imag,
            "modulus_0": s.moduli[0],
            "modulus_1": s.moduli[1],
            "modulus_2": s.moduli[2],
            "nonreal": s.nonreal,
            "distinct": s.distinct,
            "equimodular": s.equimodular,
        }
        for s in trace
    ]
    ok = bool(trace) and trace[-1].ok
    data = {"a": a, "trace": rows, "found": ok}
    if ok:
        reduced = SequenceParams.normalized(a)
        att = attraction_check(reduced, trace[-1].z, m_max=args.m_max)
        data["z_star"] = trace[-1].z
        data["attraction"] = {
            "found": att.found,
            "m": att.m,
            "zero": att.zero,
            "distance": att.distance,
            "label": att.label,
        }
    return data, rows, ok


_DISPATCH = {
    "gen": _cmd_gen,
    "zeros": _cmd_zeros,
    "check": _cmd_check,
    "classify": _cmd_classify,
    "scan": _cmd_scan,
    "curve": _cmd_curve,
    "density": _cmd_density,
    "witness": _cmd_witness,
}


def run(args) -> int:
    """Execute a parsed command and emit its document; returns the exit status."""
    try:
        data, rows, ok = _DISPATCH[args.command](args)
    except FourTermError as exc:
        error = {"error": {"type": type(exc).__name__, "message": str(exc)}, "meta": _meta(args)}
        _emit(json.dumps(_clean(error), indent=2) + "\n", args.out)
        return 1
    _emit(_render(args, data, rows), args.out)
    return 0 if ok else 1


_VALUE_FLAGS = ("--b-range", "--c-range", "--window", "--a", "--b", "--c")


def _glue_values(argv: list[str]) -> list[str]:
    """Join value flags to values such as ``-2:2`` that argparse would read as options."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2] in "0123456789.":
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_values(argv))
    if args.precision_bits is not None and args.precision_bits < 53:
        parser.error("--precision-bits must be at least 53")
    try:
        return run(args)
    except UsageError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
