"""Command-line front end.

    trigspline coeffs              finite Fourier coefficients of the data
    trigspline sample              spline (or trigonometric polynomial) on a probe grid
    trigspline basis               normalized basis functions on a probe grid
    trigspline check-orthogonality discrete orthogonality on both grids
    trigspline check-identity      Riemann/power factor duality
    trigspline compare-poly        odd-order spline vs periodic polynomial spline
    trigspline rule                step-function test of the r-th derivative

Check commands print a report ending in PASS or FAIL and exit 1 on FAIL.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import os
import sys

import numpy as np

from .factors import FactorKind
from .fourier import SampleError, SampleSet, compute_coefficients, eval_trig_polynomial
from .grid import GridError, GridSpec, orthogonality_deviation
from .kernels import DegenerateNormalizerError, KernelError, basis_value
from .poly_oracle import build_cubic_periodic, build_linear_periodic, compare
from .spline import (RULE_THRESHOLD, SplineError, SplineParams, build_spline, duality_deviation,
                     params_from_dict, probe_grid, rule_diagnostic)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_EVEN_N = 4
EXIT_PARAMS = 5
EXIT_NUMERIC = 6

REFERENCE_DATA = "2,1,3,2,4,1,3,1,3"
DEFAULT_THRESHOLDS = {
    "check-orthogonality": 1e-10,
    "check-identity": 1e-8,
    "compare-poly-1": 1e-7,
    "compare-poly-3": 1e-6,
}


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _fmt(x) -> str:
    return format(float(x), ".17g")


def parse_orders(text: str) -> list:
    """``"3"``, ``"1,3,5"`` or ``"0-5"`` -> list of orders."""
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        lo, sep, hi = part.partition("-")
        try:
            if sep:
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise CliError(f"cannot parse order list {text!r}", EXIT_PARAMS) from None
    if not out:
        raise CliError("empty order list", EXIT_PARAMS)
    return out


def read_values(source: str) -> list:
    """Inline comma-separated values, or a file with one value per line."""
    if os.path.isfile(source):
        try:
            with open(source) as fh:
                lines = [ln.split("#", 1)[0].strip() for ln in fh]
            vals = [float(ln) for ln in lines if ln]
        except (OSError, ValueError) as exc:
            raise CliError(f"malformed data file {source}: {exc}", EXIT_INPUT) from None
    else:
        try:
            vals = [float(v) for v in source.split(",") if v.strip()]
        except ValueError:
            raise CliError(f"data is neither a readable file nor a comma-separated list: {source!r}",
                           EXIT_INPUT) from None
    if len(vals) < 3 or len(vals) % 2 == 0:
        raise CliError(f"got {len(vals)} values; the node count must be odd, N = 2n+1 >= 3",
                       EXIT_EVEN_N)
    if not np.all(np.isfinite(vals)):
        raise CliError("data values must be finite", EXIT_INPUT)
    return vals


def _param_doc(args) -> dict:
    doc = {}
    if args.params:
        try:
            with open(args.params) as fh:
                doc = json.load(fh)
        except (OSError, ValueError) as exc:
            raise CliError(f"malformed parameter file {args.params}: {exc}", EXIT_INPUT) from None
        if not isinstance(doc, dict):
            raise CliError("parameter file must hold a JSON object", EXIT_INPUT)
    overrides = {"factor_kind": args.factor, "I1": args.i1, "I2": args.i2, "I3": args.i3,
                 "tail_tolerance": args.tail_tol, "max_terms": args.max_terms}
    doc.update({k: v for k, v in overrides.items() if v is not None})
    return doc


def _params(args, N: int, r: int) -> SplineParams:
    doc = dict(_param_doc(args), r=r)
    try:
        return params_from_dict(doc, N)
    except (ValueError, TypeError) as exc:
        raise CliError(f"invalid spline parameters: {exc}", EXIT_PARAMS) from None


def _orders(args, default: str) -> list:
    if args.r is not None:
        return parse_orders(args.r)
    doc = _param_doc(args)
    return [doc["r"]] if "r" in doc else parse_orders(default)


def _samples(args, indicator: int) -> SampleSet:
    vals = read_values(args.data)
    return SampleSet.from_values(vals, indicator)


@contextlib.contextmanager
def _open_out(path, r=None):
    if path in (None, "-"):
        yield sys.stdout
        return
    target = path.format(r=r) if r is not None else path
    with open(target, "w", newline="") as fh:
        yield fh


def _write_rows(fh, header, rows):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(x) if isinstance(x, (float, np.floating)) else x for x in row])


def _finish(report_lines, ok, out=None):
    out = sys.stdout if out is None else out
    for line in report_lines:
        print(line, file=out)
    print("PASS" if ok else "FAIL", file=out)
    return EXIT_OK if ok else EXIT_FAIL


# commands ----------------------------------------------------------------

def cmd_coeffs(args):
    s = _samples(args, args.grid if args.grid is not None else (args.i2 or 0))
    c = compute_coefficients(s)
    with _open_out(args.out) as fh:
        fh.write(f"a0,{_fmt(c.a0)}\n")
        _write_rows(fh, ["k", "a", "b"], [(k, a, b) for k, (a, b) in enumerate(zip(c.a, c.b), 1)])
    return EXIT_OK


def cmd_sample(args):
    orders = _orders(args, "3")
    if len(orders) > 1 and (args.out in (None, "-") or "{r}" not in args.out):
        raise CliError("several orders need --out with a '{r}' placeholder", EXIT_PARAMS)
    for r in orders:
        if args.poly:
            s = _samples(args, args.grid if args.grid is not None else 0)
            c = compute_coefficients(s)
            t = s.nodes if args.nodes else probe_grid(args.probes)
            values = eval_trig_polynomial(c, t)
        else:
            params = _params(args, len(read_values(args.data)), r)
            s = _samples(args, params.kernel.I2)
            spline = build_spline(s, params)
            t = s.nodes if args.nodes else probe_grid(args.probes)
            values = spline.evaluate(t).value
        with _open_out(args.out, r if len(orders) > 1 else None) as fh:
            _write_rows(fh, ["t", "value"], zip(map(float, t), map(float, values)))
    return EXIT_OK


def cmd_basis(args):
    (r,) = _orders(args, "3")[:1]
    N = len(read_values(args.data))
    params = _params(args, N, r)
    t = probe_grid(args.probes)
    cols = []
    for k in range(1, params.kernel.n + 1):
        C, S = basis_value(params.kernel, k, t, params.trunc)
        cols += [C, S]
    header = ["t"] + [f"{x}{k}" for k in range(1, params.kernel.n + 1) for x in ("C", "S")]
    with _open_out(args.out) as fh:
        _write_rows(fh, header, (tuple(float(c[i]) for c in [t] + cols) for i in range(t.size)))
    return EXIT_OK


def cmd_check_orthogonality(args):
    thr = args.threshold if args.threshold is not None else DEFAULT_THRESHOLDS["check-orthogonality"]
    lines, worst = [], 0.0
    for n in parse_orders(args.n):
        for I in (0, 1):
            dev = orthogonality_deviation(GridSpec(n, I))
            worst = max(worst, dev)
            lines.append(f"grid I={I} n={n} N={2 * n + 1} max_deviation={dev:.3e}")
    lines.append(f"threshold={thr:.1e} worst={worst:.3e}")
    return _finish(lines, worst <= thr)


def cmd_check_identity(args):
    thr = args.threshold if args.threshold is not None else DEFAULT_THRESHOLDS["check-identity"]
    I1 = args.i1 or 0
    I2 = args.i2 or 0
    s = _samples(args, I2)
    base = _params(args, s.grid.N, 1)
    lines, worst = [], 0.0
    for r in _orders(args, "1-5"):
        for rI3 in (0, 1):
            dev, at = duality_deviation(s, I1, I2, r, args.probes, riemann_I3=rI3, lam=base.lam,
                                        gamma=base.kernel.gamma, eta=base.kernel.eta, trunc=base.trunc)
            worst = max(worst, dev)
            lines.append(f"r={r} riemann I3={rI3} vs power I3={1 - rI3}: max_deviation={dev:.3e} at t={at:.6f}")
    lines.append(f"threshold={thr:.1e} worst={worst:.3e}")
    return _finish(lines, worst <= thr)


def cmd_compare_poly(args):
    lines, ok = [], True
    for r in _orders(args, "1,3"):
        if r not in (1, 3):
            raise CliError("polynomial oracles exist for r = 1 (broken line) and r = 3 (cubic)", EXIT_PARAMS)
        if args.threshold is not None:
            thr = args.threshold
        else:
            thr = DEFAULT_THRESHOLDS[f"compare-poly-{r}"]
        params = _params(args, len(read_values(args.data)), r)
        kp = params.kernel
        if kp.I1 != 0 or kp.I2 != 0:
            raise CliError("polynomial oracles use stitching and interpolation grid 0 (I1 = I2 = 0)", EXIT_PARAMS)
        s = _samples(args, 0)
        spline = build_spline(s, params)
        poly = build_linear_periodic(s) if r == 1 else build_cubic_periodic(s)
        dev, at = compare(spline, poly, args.probes)
        ok &= dev <= thr
        lines.append(f"r={r} factor={kp.kind.value} I3={kp.I3} vs degree-{r} periodic spline: "
                     f"max_deviation={dev:.3e} at t={at:.6f} threshold={thr:.1e}")
    return _finish(lines, ok)


def cmd_rule(args):
    lines = ["r,factor,I1,I2,I3,verdict,max_relative_std"]
    for r in _orders(args, "1-5"):
        params = _params(args, len(read_values(args.data)), r)
        s = _samples(args, params.kernel.I2)
        thr = args.threshold if args.threshold is not None else RULE_THRESHOLD
        rep = rule_diagnostic(build_spline(s, params), args.samples_per_interval, thr)
        kp = params.kernel
        lines.append(f"{r},{kp.kind.value},{kp.I1},{kp.I2},{kp.I3},{rep.verdict},{rep.relative_std.max():.3e}")
    for line in lines:
        print(line)
    return EXIT_OK


COMMANDS = {
    "coeffs": cmd_coeffs,
    "sample": cmd_sample,
    "basis": cmd_basis,
    "check-orthogonality": cmd_check_orthogonality,
    "check-identity": cmd_check_identity,
    "compare-poly": cmd_compare_poly,
    "rule": cmd_rule,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data", default=REFERENCE_DATA,
                        help="comma-separated values or a file with one value per line "
                             "(default: the 9-point reference dataset)")
    common.add_argument("--params", help="JSON file with spline parameters")
    common.add_argument("--r", help="order, list '1,3' or range '0-5'")
    common.add_argument("--factor", choices=[k.value for k in FactorKind])
    common.add_argument("--i1", type=int, choices=(0, 1))
    common.add_argument("--i2", type=int, choices=(0, 1))
    common.add_argument("--i3", type=int, choices=(0, 1))
    common.add_argument("--probes", type=int, default=256)
    common.add_argument("--out", help="output path ('-' for stdout); may contain {r}")
    common.add_argument("--tail-tol", type=float, dest="tail_tol")
    common.add_argument("--max-terms", type=int, dest="max_terms")
    common.add_argument("--threshold", type=float, help="override the check threshold")

    p = argparse.ArgumentParser(prog="trigspline", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name in ("coeffs", "sample"):
            sp.add_argument("--grid", type=int, choices=(0, 1),
                            help="grid of the data (default: I2, or 0)")
        if name == "sample":
            sp.add_argument("--poly", action="store_true",
                            help="sample the classical trigonometric polynomial instead of the spline")
            sp.add_argument("--nodes", action="store_true", help="sample at the data nodes only")
        if name == "check-orthogonality":
            sp.add_argument("--n", default="4,10", help="polynomial orders n to check")
        if name == "rule":
            sp.add_argument("--samples-per-interval", type=int, default=32, dest="samples_per_interval")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.probes < 2:
        print("error: --probes must be at least 2", file=sys.stderr)
        return EXIT_PARAMS
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (DegenerateNormalizerError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (SampleError, GridError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (KernelError, SplineError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS


if __name__ == "__main__":
    sys.exit(main())
