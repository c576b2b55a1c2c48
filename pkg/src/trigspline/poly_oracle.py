"""Periodic polynomial interpolating splines (degree 1 and 3).

These are built the classical way, from piecewise polynomials and a
cyclic tridiagonal moment system, and share no code with the kernel
series.  They serve as the reference for the odd-order coincidence
checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .fourier import SampleSet
from .grid import TWO_PI, GridSpec, all_nodes


class SingularSystemError(ArithmeticError):
    pass


def solve_cyclic_tridiagonal(lower, diag, upper, rhs):
    """Solve a tridiagonal system with periodic corner entries.

    Row i reads ``lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]``
    with indices taken modulo n, so ``lower[0]`` and ``upper[-1]`` are the
    corner entries.  The corners are removed by a rank-one
    (Sherman-Morrison) correction and the remaining tridiagonal system is
    solved twice.
    """
    a = np.asarray(lower, dtype=float)
    b = np.asarray(diag, dtype=float).copy()
    c = np.asarray(upper, dtype=float)
    f = np.asarray(rhs, dtype=float)
    n = b.size
    if n < 3:
        raise ValueError("cyclic tridiagonal solver needs n >= 3")
    alpha = c[-1]   # A[n-1, 0]
    beta = a[0]     # A[0, n-1]
    gam = -b[0] if b[0] != 0 else -1.0
    b[0] -= gam
    b[-1] -= alpha * beta / gam

    ab = np.zeros((3, n))
    ab[0, 1:] = c[:-1]
    ab[1] = b
    ab[2, :-1] = a[1:]
    u = np.zeros(n)
    u[0], u[-1] = gam, alpha
    try:
        sol = solve_banded((1, 1), ab, np.column_stack([f, u]))
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(str(exc)) from None
    x, z = sol[:, 0], sol[:, 1]
    denom = 1.0 + z[0] + beta * z[-1] / gam
    # cancellation down to rounding level means the full matrix is singular
    if abs(denom) <= 64 * np.finfo(float).eps * (1.0 + abs(z[0]) + abs(beta * z[-1] / gam)):
        raise SingularSystemError("rank-one correction is singular")
    fact = (x[0] + beta * x[-1] / gam) / denom
    return x - fact * z


def cyclic_matvec(lower, diag, upper, x):
    x = np.asarray(x, dtype=float)
    return np.asarray(lower) * np.roll(x, 1) + np.asarray(diag) * x + np.asarray(upper) * np.roll(x, -1)


@dataclass(frozen=True)
class PeriodicPolySpline:
    """Piecewise polynomial on the intervals of ``grid``.

    ``pieces[i]`` holds the power-basis coefficients in ``u = t - x_i`` on
    ``[x_i, x_i + h)``, lowest degree first.
    """

    degree: int
    grid: GridSpec
    pieces: np.ndarray


def build_linear_periodic(samples: SampleSet) -> PeriodicPolySpline:
    """Broken line through the samples, closed across the period."""
    f = samples.array
    h = samples.grid.step
    slope = (np.roll(f, -1) - f) / h
    return PeriodicPolySpline(1, samples.grid, np.column_stack([f, slope]))


def build_cubic_periodic(samples: SampleSet, *, residual_tol: float = 1e-12) -> PeriodicPolySpline:
    """C2 periodic cubic interpolant from the second-derivative moments."""
    f = samples.array
    N = f.size
    h = samples.grid.step
    lower = np.ones(N)
    diag = np.full(N, 4.0)
    upper = np.ones(N)
    rhs = 6.0 * (np.roll(f, -1) - 2.0 * f + np.roll(f, 1)) / h**2
    M = solve_cyclic_tridiagonal(lower, diag, upper, rhs)
    resid = np.max(np.abs(cyclic_matvec(lower, diag, upper, M) - rhs))
    if resid > residual_tol * max(1.0, np.max(np.abs(rhs))):
        raise SingularSystemError(f"moment system residual {resid:.3e} too large")
    Mn = np.roll(M, -1)
    fn = np.roll(f, -1)
    c1 = (fn - f) / h - h * (2.0 * M + Mn) / 6.0
    c2 = 0.5 * M
    c3 = (Mn - M) / (6.0 * h)
    return PeriodicPolySpline(3, samples.grid, np.column_stack([f, c1, c2, c3]))


def moments(spline: PeriodicPolySpline) -> np.ndarray:
    """Second derivatives at the nodes (cubic only)."""
    if spline.degree != 3:
        raise ValueError("moments are defined for cubic splines")
    return 2.0 * spline.pieces[:, 2]


def eval_poly(spline: PeriodicPolySpline, t, d: int = 0):
    """Evaluate the spline (or its d-th derivative) at ``t``."""
    x = all_nodes(spline.grid)
    h = spline.grid.step
    tt = np.asarray(t, dtype=float)
    s = np.mod(tt - x[0], TWO_PI)
    s = np.where(s >= TWO_PI, 0.0, s)
    i = np.minimum((s // h).astype(np.int64), spline.grid.N - 1)
    u = s - i * h
    coef = spline.pieces[i]
    deg = spline.degree
    for _ in range(d):
        coef = coef[..., 1:] * np.arange(1, coef.shape[-1])
    out = np.zeros(np.shape(u))
    for j in range(coef.shape[-1] - 1, -1, -1):
        out = out * u + coef[..., j]
    if d > deg:
        out = np.zeros(np.shape(u))
    return float(out) if np.ndim(out) == 0 else out


def compare(trig, poly: PeriodicPolySpline, probes: int = 256):
    """Max ``|trig(t) - poly(t)|`` over ``probes`` equispaced angles.

    Returns ``(max_abs_dev, t_at_max)``.
    """
    if trig.kernel.N != poly.grid.N:
        raise ValueError("splines are defined on grids of different size")
    t = TWO_PI * np.arange(probes) / probes
    dev = np.abs(trig.evaluate(t).value - eval_poly(poly, t))
    i = int(np.argmax(dev))
    return float(dev[i]), float(t[i])
