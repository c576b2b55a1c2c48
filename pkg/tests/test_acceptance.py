"""Acceptance criteria, one test per criterion.

Each test prints a single ``ACn ... PASS|FAIL`` line; the lines are also
repeated in the pytest terminal summary.  Run on its own with

    pytest tests/test_acceptance.py -v
"""

import time

import numpy as np
import pytest

from helpers import ACCEPTANCE_LINES, REFERENCE, fd_weights, one_sided_derivatives, random_odd_data
from trigspline.fourier import SampleSet, compute_coefficients, eval_trig_polynomial
from trigspline.grid import GridSpec, all_nodes, orthogonality_deviation
from trigspline.kernels import DegenerateNormalizerError, KernelParams, TruncationPolicy, basis_value
from trigspline.poly_oracle import build_cubic_periodic, build_linear_periodic, compare
from trigspline.spline import (SplineParams, build_spline, duality_deviation, probe_grid,
                               rule_diagnostic)

KINDS = ("power", "riemann")


def _report(tag, title, ok, detail, elapsed, limit):
    ok = ok and elapsed < limit
    line = (f"{tag} {title}: {'PASS' if ok else 'FAIL'} "
            f"({detail}; {elapsed:.2f} s of {limit:g} s)")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def _reference(indicator=0):
    return SampleSet.from_values(REFERENCE, indicator)


def test_ac1_discrete_orthogonality():
    t0 = time.perf_counter()
    worst = max(orthogonality_deviation(GridSpec(n, I)) for n in (4, 10) for I in (0, 1))
    ok = worst <= 1e-10
    assert _report("AC1", "discrete orthogonality", ok, f"max deviation {worst:.2e} <= 1e-10",
                   time.perf_counter() - t0, 1.0)


def test_ac2_fourier_interpolation():
    t0 = time.perf_counter()
    s = _reference()
    dev = float(np.max(np.abs(eval_trig_polynomial(compute_coefficients(s), s.nodes) - s.array)))
    assert _report("AC2", "finite Fourier interpolation", dev <= 1e-10,
                   f"max node error {dev:.2e} <= 1e-10", time.perf_counter() - t0, 1.0)


def test_ac3_basis_node_coincidence():
    t0 = time.perf_counter()
    t = all_nodes(GridSpec(4, 0))
    worst = 0.0
    for kind in KINDS:
        for r in range(1, 6):
            for I1 in (0, 1):
                for I3 in (0, 1):
                    p = KernelParams(9, r, kind, I1=I1, I2=0, I3=I3)
                    for k in range(1, 5):
                        c, s = basis_value(p, k, t)
                        worst = max(worst, np.max(np.abs(c - np.cos(k * t))),
                                    np.max(np.abs(s - np.sin(k * t))))
    assert _report("AC3", "basis node coincidence", worst <= 1e-8, f"max error {worst:.2e} <= 1e-8",
                   time.perf_counter() - t0, 10.0)


def test_ac4_spline_interpolation():
    t0 = time.perf_counter()
    s = _reference()
    worst = 0.0
    for kind in KINDS:
        for r in range(1, 6):
            sp = build_spline(s, SplineParams.make(9, r, kind))
            worst = max(worst, float(np.max(np.abs(sp(s.nodes) - s.array))))
    r0 = 0.0
    for kind in KINDS:
        sp = build_spline(s, SplineParams.make(9, 0, kind, trunc=TruncationPolicy(max_terms=10 ** 5)))
        r0 = max(r0, float(np.max(np.abs(sp(s.nodes) - s.array))))
    ok = worst <= 1e-8 and r0 <= 1e-4
    assert _report("AC4", "spline interpolation", ok,
                   f"r=1..5 max error {worst:.2e} <= 1e-8, r=0 max error {r0:.2e} <= 1e-4",
                   time.perf_counter() - t0, 30.0)


def test_ac5_factor_identities():
    t0 = time.perf_counter()
    s = _reference()
    worst = max(duality_deviation(s, 0, 0, r, 256, riemann_I3=I3)[0]
                for r in range(1, 6) for I3 in (0, 1))
    assert _report("AC5", "Riemann/power identities", worst <= 1e-8,
                   f"max deviation {worst:.2e} <= 1e-8", time.perf_counter() - t0, 30.0)


def test_ac6_polynomial_coincidence():
    t0 = time.perf_counter()
    rng = np.random.default_rng(6)
    datasets = [REFERENCE] + [random_odd_data(rng, N) for N in (5, 9, 13, 21, 41)]
    worst = {1: 0.0, 3: 0.0}
    for data in datasets:
        s = SampleSet.from_values(data)
        oracles = {1: build_linear_periodic(s), 3: build_cubic_periodic(s)}
        for r in (1, 3):
            for kind in KINDS:
                sp = build_spline(s, SplineParams.make(len(data), r, kind))
                worst[r] = max(worst[r], compare(sp, oracles[r], 256)[0])
    ok = worst[1] <= 1e-7 and worst[3] <= 1e-6
    assert _report("AC6", "polynomial coincidence", ok,
                   f"r=1 {worst[1]:.2e} <= 1e-7, r=3 {worst[3]:.2e} <= 1e-6",
                   time.perf_counter() - t0, 60.0)


def _interior_variation(spline, r, npts):
    """Spread of central r-th difference quotients inside each interval."""
    step = spline.stitching_grid.step
    nodes = all_nodes(spline.stitching_grid)
    offs = np.arange(npts) - (npts - 1) / 2
    w = fd_weights(offs, r)
    h = 0.1 * step / npts
    centres = (nodes[:, None] + step * np.linspace(0.2, 0.8, 5)[None, :]).ravel()
    vals = spline((centres[:, None] + h * offs[None, :]).ravel()).reshape(centres.size, npts) @ w / h ** r
    vals = vals.reshape(nodes.size, 5)
    return float(np.max(vals.max(axis=1) - vals.min(axis=1)))


def test_ac7_smoothness_class():
    t0 = time.perf_counter()
    s = _reference()
    trunc = TruncationPolicy(tail_tolerance=1e-14)
    cont, ratio = 0.0, np.inf
    for kind, I3 in (("power", 1), ("riemann", 0)):
        for r in range(2, 6):
            sp = build_spline(s, SplineParams.make(9, r, kind, 0, 0, I3, trunc=trunc))
            nodes = all_nodes(sp.stitching_grid)
            npts = r + 2
            h = sp.stitching_grid.step / (2 * npts)
            for d in range(1, r):
                left, right = one_sided_derivatives(sp, nodes, h, d, npts)
                scale = max(np.max(np.abs(left)), np.max(np.abs(right)))
                cont = max(cont, float(np.max(np.abs(left - right)) / scale))
            left, right = one_sided_derivatives(sp, nodes, h, r, npts)
            jump = float(np.min(np.abs(left - right)))
            ratio = min(ratio, jump / max(_interior_variation(sp, r, npts), 1e-300))
    ok = cont <= 1e-3 and ratio >= 10
    assert _report("AC7", "smoothness class", ok,
                   f"orders < r mismatch {cont:.2e} <= 1e-3, order-r jump/variation {ratio:.2e} >= 10",
                   time.perf_counter() - t0, 60.0)


def test_ac8_rule_diagnostic():
    t0 = time.perf_counter()
    s = _reference()
    verdicts = {}
    for r in (1, 3):
        for kind, I3 in (("power", 1), ("riemann", 0)):
            verdicts[(r, kind, I3)] = rule_diagnostic(build_spline(s, SplineParams.make(9, r, kind, 0, 0, I3))).verdict
    even = rule_diagnostic(build_spline(s, SplineParams.make(9, 2, "riemann", 0, 0, 1))).verdict
    ok = all(v == "piecewise_constant" for v in verdicts.values()) and even == "not_piecewise_constant"
    assert _report("AC8", "rule diagnostic", ok,
                   f"r=1,3 {sorted(set(verdicts.values()))}, even St(0,0,1,riemann,2) {even}",
                   time.perf_counter() - t0, 30.0)


def _random_params(rng):
    N = int(rng.choice([5, 7, 9, 11, 13]))
    n = (N - 1) // 2
    r = int(rng.integers(1, 6))
    kind = str(rng.choice(KINDS))
    I1, I2, I3 = (int(x) for x in rng.integers(0, 2, 3))
    gamma = tuple(rng.uniform(0.8, 1.2, 3))
    eta = tuple(rng.uniform(0.8, 1.2, 3))
    lam = tuple(rng.uniform(0, 1, n))
    return N, dict(r=r, kind=kind, I1=I1, I2=I2, I3=I3, gamma=gamma, eta=eta, lam=lam)


def test_ac9_truncation_soundness():
    t0 = time.perf_counter()
    rng = np.random.default_rng(9)
    t = probe_grid(256)
    worst, limit, draws, skipped = 0.0, 0.0, 0, 0
    while draws < 20:
        N, kw = _random_params(rng)
        samples = SampleSet.from_values(random_odd_data(rng, N), kw["I2"])
        base = SplineParams.make(N, trunc=TruncationPolicy(), **kw)
        try:
            sp = build_spline(samples, base)
        except DegenerateNormalizerError:
            skipped += 1
            continue
        draws += 1
        modes = [TruncationPolicy()]
        if kw["r"] >= 2:
            modes.append(TruncationPolicy(accelerate=False))
        for trunc in modes:
            sp = build_spline(samples, SplineParams.make(N, trunc=trunc, **kw))
            ev = sp.evaluate(t)
            M = int(np.max(ev.terms))
            bigger = TruncationPolicy(trunc.tail_tolerance, max(2 * M, trunc.cap), 2 * M, trunc.accelerate)
            ev2 = build_spline(samples, SplineParams.make(N, trunc=bigger, **kw)).evaluate(t)
            worst = max(worst, float(np.max(np.abs(ev2.value - ev.value))))
            limit = 10 * trunc.tail_tolerance
    ok = worst <= limit
    assert _report("AC9", "truncation soundness", ok,
                   f"20 draws ({skipped} degenerate redrawn), max change {worst:.2e} <= {limit:.0e}",
                   time.perf_counter() - t0, 60.0)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
