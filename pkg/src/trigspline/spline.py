"""Trigonometric splines built on the kernel basis.

A spline of order r is

    St(t) = a0/2 + sum_k lambda_k [a_k C_k(t) + b_k S_k(t)],

with the coefficients taken from samples on the interpolation grid
(indicator I2) and the basis functions from ``kernels``.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .factors import FactorKind
from .fourier import FourierCoefficients, SampleSet, compute_coefficients
from .grid import TWO_PI, GridSpec, all_nodes
from .kernels import (DEFAULT_TRUNCATION, KernelParams, TruncationPolicy,
                      kernel_normalizers, kernel_values)

RULE_THRESHOLD = 1e-3


class SplineError(ValueError):
    """Spline parameters inconsistent with the data."""


class DistributionalDerivativeWarning(UserWarning):
    """The r-th derivative series only converges off the stitching nodes."""


@dataclass(frozen=True)
class SplineParams:
    kernel: KernelParams
    lam: tuple | None = None
    trunc: TruncationPolicy = DEFAULT_TRUNCATION

    def __post_init__(self):
        n = self.kernel.n
        lam = (1.0,) * n if self.lam is None else tuple(float(x) for x in self.lam)
        if len(lam) != n:
            raise SplineError(f"lambda needs n = {n} entries, got {len(lam)}")
        if not all(math.isfinite(x) for x in lam):
            raise SplineError("lambda entries must be finite")
        object.__setattr__(self, "lam", lam)

    @classmethod
    def make(cls, N, r, kind="power", I1=0, I2=0, I3=1, gamma=(1, 1, 1), eta=(1, 1, 1),
             lam=None, trunc=DEFAULT_TRUNCATION) -> "SplineParams":
        return cls(KernelParams(N, r, FactorKind.parse(kind), I1, I2, I3, gamma, eta), lam, trunc)


@dataclass(frozen=True)
class Evaluation:
    """Spline values with a bound on the truncation error at each point."""

    value: np.ndarray
    bound: np.ndarray
    terms: np.ndarray
    guaranteed: bool


@dataclass(frozen=True)
class TrigSpline:
    params: SplineParams
    coeffs: FourierCoefficients
    grid_n: int
    normalizers: tuple = field(repr=False)

    @property
    def kernel(self) -> KernelParams:
        return self.params.kernel

    @property
    def r(self) -> int:
        return self.kernel.r

    @property
    def stitching_grid(self) -> GridSpec:
        return GridSpec(self.grid_n, self.kernel.I1)

    @property
    def interpolation_grid(self) -> GridSpec:
        return GridSpec(self.grid_n, self.kernel.I2)

    def evaluate(self, t, d: int = 0) -> Evaluation:
        """Value (d = 0) or d-th derivative at ``t``, with error bounds."""
        tt = np.atleast_1d(np.asarray(t, dtype=float)).ravel()
        value = np.full(tt.shape, 0.5 * self.coeffs.a0 if d == 0 else 0.0)
        bound = np.zeros(tt.shape)
        terms = np.zeros(tt.shape, np.int64)
        guaranteed = True
        trunc = self.params.trunc
        for k, lam_k in enumerate(self.params.lam, start=1):
            a, b = self.coeffs.a[k - 1], self.coeffs.b[k - 1]
            if lam_k == 0 or (a == 0 and b == 0):
                continue
            Hc, Hs = self.normalizers[k - 1]
            kv = kernel_values(self.kernel, k, tt, trunc, d)
            value += lam_k * (a * kv.cos / Hc + b * kv.sin / Hs)
            bound += abs(lam_k) * (abs(a) * kv.cos_bound / abs(Hc) + abs(b) * kv.sin_bound / abs(Hs))
            terms = np.maximum(terms, kv.terms)
            guaranteed &= kv.guaranteed
        return Evaluation(value, bound, terms, guaranteed)

    def __call__(self, t):
        return eval_spline(self, t)


def build_spline(samples: SampleSet, params: SplineParams) -> TrigSpline:
    """Compile a spline from samples on its interpolation grid."""
    kp = params.kernel
    if samples.grid.N != kp.N:
        raise SplineError(f"samples have N = {samples.grid.N}, parameters expect N = {kp.N}")
    if samples.grid.indicator != kp.I2:
        raise SplineError(
            f"samples lie on grid {samples.grid.indicator} but the interpolation grid is I2 = {kp.I2}")
    coeffs = compute_coefficients(samples)
    norms = tuple(kernel_normalizers(kp, k, params.trunc) for k in range(1, kp.n + 1))
    return TrigSpline(params, coeffs, samples.grid.n, norms)


def _out(t, arr):
    return float(arr[0]) if np.ndim(t) == 0 else arr.reshape(np.shape(t))


def eval_spline(spline: TrigSpline, t):
    """Spline value at ``t`` (scalar or array)."""
    return _out(t, spline.evaluate(t).value)


def eval_derivative(spline: TrigSpline, t, d: int):
    """d-th derivative by termwise differentiation, ``1 <= d <= r``.

    For ``d = r`` the series converges only away from the stitching nodes
    (the derivative jumps there); a DistributionalDerivativeWarning is
    issued.
    """
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise SplineError(f"derivative order must be an integer >= 1, got {d!r}")
    if d > spline.r:
        raise SplineError(f"derivative order {d} exceeds the spline order r = {spline.r}")
    if d == spline.r:
        warnings.warn("derivative of order r is a jump function at the stitching nodes",
                      DistributionalDerivativeWarning, stacklevel=2)
    return _out(t, spline.evaluate(t, int(d)).value)


def probe_grid(probes: int = 256) -> np.ndarray:
    """Equispaced probe angles ``2*pi*p/probes`` on [0, 2*pi)."""
    if probes < 2:
        raise ValueError("need at least two probe points")
    return TWO_PI * np.arange(probes) / probes


@dataclass(frozen=True)
class RuleReport:
    """Outcome of the step-function test of the r-th derivative."""

    piecewise_constant: bool
    relative_std: np.ndarray
    interval_mean: np.ndarray
    scale: float

    @property
    def verdict(self) -> str:
        return "piecewise_constant" if self.piecewise_constant else "not_piecewise_constant"


def rule_diagnostic(spline: TrigSpline, samples_per_interval: int = 32,
                    threshold: float = RULE_THRESHOLD) -> RuleReport:
    """Is the r-th derivative a step function on the stitching grid?

    The derivative is sampled strictly inside each stitching interval
    (between 10% and 90% of its width).  The per-interval standard
    deviation is taken relative to the largest absolute derivative value
    seen anywhere; the verdict is piecewise constant when every interval
    stays within ``threshold``.
    """
    if spline.r < 1:
        raise SplineError("the step-function test needs r >= 1")
    if samples_per_interval < 2:
        raise ValueError("need at least two samples per interval")
    s = all_nodes(spline.stitching_grid)
    h = spline.stitching_grid.step
    u = np.linspace(0.1, 0.9, samples_per_interval)
    t = (s[:, None] + h * u[None, :]).ravel()
    vals = spline.evaluate(t, spline.r).value.reshape(s.size, samples_per_interval)
    scale = float(np.max(np.abs(vals)))
    std = vals.std(axis=1)
    rel = std / scale if scale > 0 else np.zeros_like(std)
    return RuleReport(bool(np.all(rel <= threshold)), rel, vals.mean(axis=1), scale)


def one_sided_values(spline: TrigSpline, d: int = 0, offset: float | None = None):
    """Values of the d-th derivative just left and right of each stitching node."""
    s = all_nodes(spline.stitching_grid)
    if offset is None:
        offset = 1e-6 * spline.stitching_grid.step
    left = spline.evaluate(s - offset, d).value
    right = spline.evaluate(s + offset, d).value
    return left, right


def duality_deviation(samples: SampleSet, I1: int, I2: int, r: int, probes: int = 256,
                      riemann_I3: int = 0, lam=None, gamma=(1, 1, 1), eta=(1, 1, 1),
                      trunc: TruncationPolicy = DEFAULT_TRUNCATION):
    """Max deviation between a Riemann-factor spline and its power-factor twin.

    The Riemann spline with ``I3 = riemann_I3`` is compared against the
    power spline with ``I3 = 1 - riemann_I3``; returns ``(max_dev, t_at_max)``.
    """
    N = samples.grid.N
    left = build_spline(samples, SplineParams.make(N, r, "riemann", I1, I2, riemann_I3, gamma, eta, lam, trunc))
    right = build_spline(samples, SplineParams.make(N, r, "power", I1, I2, 1 - riemann_I3, gamma, eta, lam, trunc))
    t = probe_grid(probes)
    dev = np.abs(left.evaluate(t).value - right.evaluate(t).value)
    i = int(np.argmax(dev))
    return float(dev[i]), float(t[i])


# JSON configuration -----------------------------------------------------

_JSON_FIELDS = ("I1", "I2", "I3", "lambda", "gamma", "eta", "r", "factor_kind",
                "tail_tolerance", "max_terms", "min_terms", "accelerate")


def params_to_dict(params: SplineParams) -> dict:
    kp, tr = params.kernel, params.trunc
    return {
        "I1": kp.I1, "I2": kp.I2, "I3": kp.I3,
        "lambda": list(params.lam), "gamma": list(kp.gamma), "eta": list(kp.eta),
        "r": kp.r, "factor_kind": kp.kind.value,
        "tail_tolerance": tr.tail_tolerance, "max_terms": tr.max_terms,
        "min_terms": tr.min_terms, "accelerate": tr.accelerate,
    }


def params_from_dict(doc: dict, N: int) -> SplineParams:
    """Rebuild parameters from a JSON document; ``N`` comes from the data."""
    unknown = set(doc) - set(_JSON_FIELDS)
    if unknown:
        raise SplineError(f"unknown parameter fields: {', '.join(sorted(unknown))}")
    if "r" not in doc:
        raise SplineError("parameter document must give the order r")
    base = TruncationPolicy()
    trunc = TruncationPolicy(
        tail_tolerance=float(doc.get("tail_tolerance", base.tail_tolerance)),
        max_terms=doc.get("max_terms", base.max_terms),
        min_terms=int(doc.get("min_terms", base.min_terms)),
        accelerate=bool(doc.get("accelerate", base.accelerate)),
    )
    return SplineParams.make(
        N, doc["r"], doc.get("factor_kind", "power"),
        doc.get("I1", 0), doc.get("I2", 0), doc.get("I3", 1),
        doc.get("gamma", (1, 1, 1)), doc.get("eta", (1, 1, 1)),
        doc.get("lambda"), trunc)


def params_to_json(params: SplineParams) -> str:
    return json.dumps(params_to_dict(params), indent=2)


def params_from_json(text: str, N: int) -> SplineParams:
    return params_from_dict(json.loads(text), N)


def with_truncation(params: SplineParams, **changes) -> SplineParams:
    return replace(params, trunc=replace(params.trunc, **changes))
