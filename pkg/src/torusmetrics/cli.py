"""Command-line interface.

Verbs:

    dist      one distance between two moduli
    report    every metric between two moduli (plain, json, or csv)
    geodesic  table of points along the connecting geodesic
    reduce    reduce a modulus into the fundamental domain, with witness
    family    inspect one member of the extremal piecewise-stretch family
    verify    run the library's invariant battery

Half-plane points use the literal grammar `[-]<real>[+|-]<real>i` with plain
decimal reals and no whitespace, e.g. 0+1i or -0.5+0.866i.  Plain and CSV
numbers carry 12 significant digits (trailing zeros kept); JSON carries raw
floats so that parsing the emitted document reproduces every numeric field
bit-exactly.

CSV report column order: tau_from, tau_to, lambda, teich, kappa_enumerated,
kappa_gap, kappa_prime_fwd, kappa_prime_rev, sorvali_d, s_kappa_prime, wp,
poincare.  (kappa_witness appears only in json/plain output.)

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

from .extremal import PiecewiseStretchMap, family_lipschitz_constant, family_qc_distortion, validate_params
from .halfplane import HPoint, geodesic_path, poincare_distance, reduce_to_fundamental_domain
from .metrics import (
    DEFAULT_ENUMERATION_BOUND,
    MetricReport,
    full_report,
    kappa_metric,
    kappa_prime,
    lambda_metric,
    s_kappa_prime,
    sorvali_dilatation,
    teichmuller_metric,
    wp_distance,
)
from .verify import run_all

__all__ = [
    "format_significant",
    "parse_hpoint",
    "format_hpoint",
    "run",
    "main",
]

SIGNIFICANT_DIGITS = 12

CSV_COLUMNS = (
    "tau_from",
    "tau_to",
    "lambda",
    "teich",
    "kappa_enumerated",
    "kappa_gap",
    "kappa_prime_fwd",
    "kappa_prime_rev",
    "sorvali_d",
    "s_kappa_prime",
    "wp",
    "poincare",
)

# Witnesses below this gap attain the supremum as far as the run can tell.
_ATTAINED_GAP = 1e-9

_HPOINT_RE = re.compile(
    r"^(?P<re>[+-]?(?:\d+(?:\.\d*)?|\.\d+))(?P<im>[+-](?:\d+(?:\.\d*)?|\.\d+))i$"
)


class UsageError(Exception):
    pass


def format_significant(x: float, digits: int = SIGNIFICANT_DIGITS) -> str:
    """Fixed-point rendering with `digits` significant digits, zeros kept."""
    x = float(x)
    if not math.isfinite(x):
        return str(x)
    if x == 0.0:
        return f"{0.0:.{digits}f}"
    decimals = digits - 1 - math.floor(math.log10(abs(x)))
    if decimals <= 0:
        return f"{round(x, decimals):.0f}"
    return f"{x:.{decimals}f}"


def parse_hpoint(text: str) -> HPoint:
    m = _HPOINT_RE.match(text)
    if not m:
        raise UsageError(
            f"cannot parse half-plane point {text!r}; expected [-]<real>[+|-]<real>i, e.g. 0.5+0.866i"
        )
    re_part, im_part = float(m.group("re")), float(m.group("im"))
    try:
        return HPoint(re_part, im_part)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def format_hpoint(p: HPoint) -> str:
    return f"{format_significant(p.re)}+{format_significant(p.im)}i"


def _metric_value(name: str, a: HPoint, b: HPoint, N: int) -> float:
    if name == "lambda":
        return lambda_metric(a, b)
    if name == "teich":
        return teichmuller_metric(a, b)
    if name == "kappa":
        return kappa_metric(a, b, N).value
    if name == "kappa-prime":
        return kappa_prime(a, b, N)
    if name == "sorvali":
        return sorvali_dilatation(a, b, N)
    if name == "skappa-prime":
        return s_kappa_prime(a, b, N)
    if name == "wp":
        return wp_distance(a, b)
    if name == "poincare":
        return poincare_distance(a, b)
    raise UsageError(f"unknown metric {name!r}")


METRIC_NAMES = ("lambda", "teich", "kappa", "kappa-prime", "sorvali", "skappa-prime", "wp", "poincare")


def report_to_json_dict(rep: MetricReport) -> dict:
    return {
        "tau_from": format_hpoint(rep.tau_from),
        "tau_to": format_hpoint(rep.tau_to),
        "lambda": rep.lambda_,
        "teich": rep.teich,
        "kappa_enumerated": rep.kappa_enumerated,
        "kappa_witness": None if rep.kappa_witness is None else [rep.kappa_witness.m, rep.kappa_witness.n],
        "kappa_gap": rep.kappa_gap,
        "kappa_prime_fwd": rep.kappa_prime_fwd,
        "kappa_prime_rev": rep.kappa_prime_rev,
        "sorvali_d": rep.sorvali_d,
        "s_kappa_prime": rep.s_kappa_prime,
        "wp": rep.wp,
        "poincare": rep.poincare,
        "N": rep.N,
    }


def report_to_csv_row(rep: MetricReport) -> str:
    values = {
        "tau_from": format_hpoint(rep.tau_from),
        "tau_to": format_hpoint(rep.tau_to),
        "lambda": format_significant(rep.lambda_),
        "teich": format_significant(rep.teich),
        "kappa_enumerated": format_significant(rep.kappa_enumerated),
        "kappa_gap": format_significant(rep.kappa_gap),
        "kappa_prime_fwd": format_significant(rep.kappa_prime_fwd),
        "kappa_prime_rev": format_significant(rep.kappa_prime_rev),
        "sorvali_d": format_significant(rep.sorvali_d),
        "s_kappa_prime": format_significant(rep.s_kappa_prime),
        "wp": format_significant(rep.wp),
        "poincare": format_significant(rep.poincare),
    }
    return ",".join(values[c] for c in CSV_COLUMNS)


def _emit_report(rep: MetricReport, fmt: str, out):
    if fmt == "json":
        print(json.dumps(report_to_json_dict(rep)), file=out)
    elif fmt == "csv":
        print(",".join(CSV_COLUMNS), file=out)
        print(report_to_csv_row(rep), file=out)
    else:
        witness = rep.kappa_witness
        note = ""
        if witness is not None and rep.kappa_gap > _ATTAINED_GAP:
            note = " (approached, not attained)"
        print(f"tau_from         {format_hpoint(rep.tau_from)}", file=out)
        print(f"tau_to           {format_hpoint(rep.tau_to)}", file=out)
        print(f"lambda           {format_significant(rep.lambda_)}", file=out)
        print(f"teich            {format_significant(rep.teich)}", file=out)
        print(f"kappa_enumerated {format_significant(rep.kappa_enumerated)}  N={rep.N}", file=out)
        print(f"kappa_witness    ({witness.m}, {witness.n}){note}", file=out)
        print(f"kappa_gap        {format_significant(rep.kappa_gap)}", file=out)
        print(f"kappa_prime_fwd  {format_significant(rep.kappa_prime_fwd)}", file=out)
        print(f"kappa_prime_rev  {format_significant(rep.kappa_prime_rev)}", file=out)
        print(f"sorvali_d        {format_significant(rep.sorvali_d)}", file=out)
        print(f"s_kappa_prime    {format_significant(rep.s_kappa_prime)}", file=out)
        print(f"wp               {format_significant(rep.wp)}", file=out)
        print(f"poincare         {format_significant(rep.poincare)}", file=out)


def geodesic_table(a: HPoint, b: HPoint, samples: int, metric: str, N: int) -> list[tuple[float, HPoint, float]]:
    """Rows (t_k, tau(t_k), d(a, tau(t_k))) at samples evenly spaced parameters."""
    if a == b:
        raise UsageError("geodesic endpoints coincide")
    if samples < 2:
        raise UsageError(f"need at least 2 samples, got {samples}")
    ts = [k / (samples - 1) for k in range(samples)]
    pts = geodesic_path(a, b, ts)
    rows = []
    for t, w in zip(ts, pts):
        p = HPoint(w.real, w.imag)
        rows.append((t, p, _metric_value(metric, a, p, N)))
    return rows


def _emit_geodesic(rows, fmt, out):
    if fmt == "json":
        doc = [{"t": t, "tau": format_hpoint(p), "d": d} for t, p, d in rows]
        print(json.dumps(doc), file=out)
        return
    if fmt == "csv":
        print("t,tau,d", file=out)
        for t, p, d in rows:
            print(f"{format_significant(t)},{format_hpoint(p)},{format_significant(d)}", file=out)
        return
    print("# t tau d", file=out)
    for t, p, d in rows:
        print(f"{format_significant(t)} {format_hpoint(p)} {format_significant(d)}", file=out)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torusmetrics", description="Distances between marked flat tori.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_pair(p):
        p.add_argument("--from", dest="src", required=True, metavar="TAU", help="source modulus, e.g. 0+1i")
        p.add_argument("--to", dest="dst", required=True, metavar="TAU", help="target modulus")
        p.add_argument("--N", dest="N", type=int, default=DEFAULT_ENUMERATION_BOUND,
                       help="enumeration bound for curve-ratio metrics")

    p = sub.add_parser("dist", help="one distance between two moduli")
    add_pair(p)
    p.add_argument("--metric", required=True, choices=METRIC_NAMES)

    p = sub.add_parser("report", help="all metrics between two moduli")
    add_pair(p)
    p.add_argument("--format", choices=("plain", "json", "csv"), default="plain")

    p = sub.add_parser("geodesic", help="points along the connecting geodesic")
    add_pair(p)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--metric", choices=METRIC_NAMES, default="poincare")
    p.add_argument("--format", choices=("plain", "json", "csv"), default="plain")

    p = sub.add_parser("reduce", help="reduce a modulus into the fundamental domain")
    p.add_argument("--point", required=True, metavar="TAU")
    p.add_argument("--format", choices=("plain", "json"), default="plain")

    p = sub.add_parser("family", help="inspect one extremal piecewise-stretch map")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--format", choices=("plain", "json"), default="plain")

    p = sub.add_parser("verify", help="run the invariant battery")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quick", action="store_true", help="smaller draw counts")

    return parser


def _dispatch(args, out, err) -> int:
    if args.verb == "dist":
        a, b = parse_hpoint(args.src), parse_hpoint(args.dst)
        if args.N < 1:
            raise UsageError(f"N must be >= 1, got {args.N}")
        print(format_significant(_metric_value(args.metric, a, b, args.N)), file=out)
        return 0

    if args.verb == "report":
        a, b = parse_hpoint(args.src), parse_hpoint(args.dst)
        if args.N < 1:
            raise UsageError(f"N must be >= 1, got {args.N}")
        _emit_report(full_report(a, b, args.N), args.format, out)
        return 0

    if args.verb == "geodesic":
        a, b = parse_hpoint(args.src), parse_hpoint(args.dst)
        rows = geodesic_table(a, b, args.samples, args.metric, args.N)
        _emit_geodesic(rows, args.format, out)
        return 0

    if args.verb == "reduce":
        p = parse_hpoint(args.point)
        w, M = reduce_to_fundamental_domain(p)
        if args.format == "json":
            print(json.dumps({"point": format_hpoint(w), "matrix": M.rows()}), file=out)
        else:
            print(f"point  {format_hpoint(w)}", file=out)
            print(f"matrix {M.rows()}", file=out)
        return 0

    if args.verb == "family":
        ok, reason = validate_params(args.r, args.eps, args.delta)
        if not ok:
            raise UsageError(reason)
        F = PiecewiseStretchMap(args.r, args.eps, args.delta)
        payload = {
            "r": F.r,
            "eps": F.eps,
            "delta": F.delta,
            "bottom_stretch": F.bottom_stretch,
            "top_stretch": F.top_stretch,
            "lipschitz": family_lipschitz_constant(F),
            "qc_distortion": family_qc_distortion(F),
            "is_affine": F.is_affine(),
        }
        if args.format == "json":
            print(json.dumps(payload), file=out)
        else:
            affine = " (affine)" if payload["is_affine"] else ""
            print(f"params        r={format_significant(F.r)} eps={format_significant(F.eps)} "
                  f"delta={format_significant(F.delta)}{affine}", file=out)
            print(f"bottom block  diag({format_significant(F.r)}, {format_significant(F.bottom_stretch)})", file=out)
            print(f"top block     diag({format_significant(F.r)}, {format_significant(F.top_stretch)})", file=out)
            print(f"lipschitz     {format_significant(payload['lipschitz'])}", file=out)
            print(f"qc-distortion {format_significant(payload['qc_distortion'])}", file=out)
        return 0

    if args.verb == "verify":
        results = run_all(seed=args.seed, quick=args.quick, report=lambda line: print(line, file=out))
        failed = [r for r in results if not r.ok]
        print(f"{len(results) - len(failed)}/{len(results)} checks passed", file=out)
        return 1 if failed else 0

    raise UsageError(f"unknown verb {args.verb!r}")


def run(argv=None, out=None, err=None) -> int:
    """Parse argv and execute; returns the process exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return _dispatch(args, out, err)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
