"""Kernel series C_k, S_k and their normalizers.

For harmonic k the cosine kernel is

    gamma1 s(k) cos kt + sum_{m>=1} (-1)**(m K1) [gamma3 s(mN+k) cos((mN+k)t)
                                   + (-1)**((1+r) I3) gamma2 s(mN-k) cos((mN-k)t)]

and the sine kernel is the same with sines, the eta weights, and the
(mN-k) term subtracted.  The normalizers are the kernel sums with every
trigonometric factor replaced by one and K2 in place of K1.  Dividing a
kernel by its normalizer gives the basis function.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .factors import FactorKind, alias_form, check_order, k1_k2, sigma
from .grid import reduce_angle
from .tails import AliasSeries, Envelope

DEGENERACY_THRESHOLD = 1e-13


class KernelError(ValueError):
    """Invalid kernel request."""


class DegenerateNormalizerError(ArithmeticError):
    """A normalizer is too close to zero for its basis function to be usable."""


@dataclass(frozen=True)
class TruncationPolicy:
    """How the infinite sums over m are cut.

    ``tail_tolerance`` is relative to the normalizer of the harmonic;
    ``max_terms`` caps the head length (``None`` means uncapped), and
    ``min_terms`` forces a minimum head length.  With ``accelerate`` off the
    tail is dropped and the head length follows the integral tail bound.
    """

    tail_tolerance: float = 1e-10
    max_terms: int | None = 10**6
    min_terms: int = 1
    accelerate: bool = True

    def __post_init__(self):
        if not (self.tail_tolerance > 0 and math.isfinite(self.tail_tolerance)):
            raise ValueError("tail_tolerance must be a positive finite number")
        if self.max_terms is not None and (int(self.max_terms) != self.max_terms or self.max_terms < 1):
            raise ValueError("max_terms must be a positive integer or None")
        if int(self.min_terms) != self.min_terms or self.min_terms < 1:
            raise ValueError("min_terms must be a positive integer")

    @property
    def cap(self) -> int:
        return sys.maxsize if self.max_terms is None else int(self.max_terms)


DEFAULT_TRUNCATION = TruncationPolicy()


def _triple(v, name):
    t = tuple(float(x) for x in v)
    if len(t) != 3 or not all(math.isfinite(x) for x in t):
        raise KernelError(f"{name} must be three finite numbers")
    if t[1] * t[2] == 0:
        raise KernelError(f"{name}: the mid- and high-frequency weights must be non-zero")
    return t


@dataclass(frozen=True)
class KernelParams:
    """Parameters shared by all kernels of one spline."""

    N: int
    r: int
    kind: FactorKind = FactorKind.POWER
    I1: int = 0
    I2: int = 0
    I3: int = 1
    gamma: tuple = (1.0, 1.0, 1.0)
    eta: tuple = (1.0, 1.0, 1.0)

    def __post_init__(self):
        if isinstance(self.N, bool) or int(self.N) != self.N or self.N < 3 or self.N % 2 == 0:
            raise KernelError(f"N must be odd and >= 3, got {self.N!r}")
        object.__setattr__(self, "N", int(self.N))
        try:
            object.__setattr__(self, "r", check_order(self.r))
        except ValueError as exc:
            raise KernelError(str(exc)) from None
        object.__setattr__(self, "kind", FactorKind.parse(self.kind))
        for name in ("I1", "I2", "I3"):
            if getattr(self, name) not in (0, 1):
                raise KernelError(f"{name} must be 0 or 1")
            object.__setattr__(self, name, int(getattr(self, name)))
        object.__setattr__(self, "gamma", _triple(self.gamma, "gamma"))
        object.__setattr__(self, "eta", _triple(self.eta, "eta"))

    @property
    def n(self) -> int:
        return (self.N - 1) // 2

    @property
    def K(self) -> tuple:
        return k1_k2(self.kind, self.r, self.I1, self.I2)

    @property
    def minus_sign(self) -> int:
        """Sign ``(-1)**((1+r) I3)`` in front of the (mN-k) terms."""
        return -1 if ((1 + self.r) * self.I3) % 2 else 1

    @property
    def unit_vectors(self) -> bool:
        return self.gamma == (1.0, 1.0, 1.0) and self.eta == (1.0, 1.0, 1.0)


@lru_cache(maxsize=1024)
def _series(kind: FactorKind, r: int, N: int, k: int, sign: int, K: int, d: int) -> AliasSeries:
    """Series ``sum_m (-1)**(m K) s(mN + sign k) (mN + sign k)**d exp(i m phi)``."""
    def weights(M):
        nu = np.arange(1, M + 1, dtype=np.int64) * N + sign * k
        alt = np.where(np.arange(1, M + 1) * K % 2, -1.0, 1.0)
        return alt * sigma(kind, r, nu, N) * nu.astype(float) ** d

    scale, parity = alias_form(kind, r, k, N, sign)
    return AliasSeries(weights, Envelope(N, sign * k, 1 + r - d, scale, (parity + K) % 2))


def _check_k(params: KernelParams, k) -> int:
    if isinstance(k, bool) or int(k) != k or not 1 <= k <= params.n:
        raise KernelError(f"harmonic index must lie in 1..{params.n}, got {k!r}")
    return int(k)


def _fixed(params: KernelParams, trunc: TruncationPolicy) -> bool:
    if params.r == 0:
        if trunc.max_terms is None:
            raise KernelError("order r = 0 needs a finite max_terms (the series do not converge absolutely)")
        return True
    return False


def _sum(series: AliasSeries, phi, target, params, trunc, *, d=0):
    fixed = _fixed(params, trunc) or (d == params.r)
    if d == params.r and params.r > 0 and trunc.accelerate:
        # conditionally convergent: accelerate off the nodes, cap otherwise
        fixed = False
    return series.evaluate(phi, target, max_terms=trunc.cap, min_terms=trunc.min_terms,
                           accelerate=trunc.accelerate, fixed=fixed)


@lru_cache(maxsize=4096)
def _normalizers(params: KernelParams, k: int, trunc: TruncationPolicy) -> tuple:
    K2 = params.K[1]
    s_k = sigma(params.kind, params.r, k, params.N)
    eps = params.minus_sign
    g1, g2, g3 = params.gamma
    e1, e2, e3 = params.eta
    # sums at phase zero are cheap, so aim at rounding level
    target = 1e-17 * max(abs(s_k), 1e-300)
    parts = []
    for sign in (1, -1):
        v, b, _ = _sum(_series(params.kind, params.r, params.N, k, sign, K2, 0), [0.0], target, params, trunc)
        parts.append((float(v[0].real), float(b[0])))
    (bp, ep), (bm, em) = parts
    Hc = g1 * s_k + g3 * bp + eps * g2 * bm
    Hs = e1 * s_k + e3 * bp + eps * e2 * bm
    return Hc, Hs, abs(g3) * ep + abs(g2) * em, abs(e3) * ep + abs(e2) * em


def kernel_normalizers(params: KernelParams, k: int, trunc: TruncationPolicy = DEFAULT_TRUNCATION) -> tuple:
    """Normalizers ``(Hc_k, Hs_k)``.

    Raises DegenerateNormalizerError when either is below 1e-13 in magnitude.
    """
    k = _check_k(params, k)
    Hc, Hs, _, _ = _normalizers(params, k, trunc)
    for name, h in (("Hc", Hc), ("Hs", Hs)):
        if not abs(h) >= DEGENERACY_THRESHOLD:
            raise DegenerateNormalizerError(
                f"normalizer {name}_{k} = {h:.3e} is degenerate (|H| < {DEGENERACY_THRESHOLD:g})")
    return Hc, Hs


@dataclass(frozen=True)
class KernelValues:
    """Kernel values (or derivatives) for one harmonic at a set of angles."""

    cos: np.ndarray
    sin: np.ndarray
    cos_bound: np.ndarray
    sin_bound: np.ndarray
    terms: np.ndarray
    guaranteed: bool = field(default=True)


def kernel_values(params: KernelParams, k: int, t, trunc: TruncationPolicy = DEFAULT_TRUNCATION,
                  d: int = 0) -> KernelValues:
    """Cosine and sine kernels of harmonic k (or their d-th derivatives) at ``t``."""
    k = _check_k(params, k)
    if isinstance(d, bool) or int(d) != d or d < 0:
        raise KernelError(f"derivative order must be a non-negative integer, got {d!r}")
    d = int(d)
    if d > params.r:
        raise KernelError(f"derivative order {d} exceeds the spline order r = {params.r}")
    Hc, Hs = kernel_normalizers(params, k, trunc)
    tt = reduce_angle(np.atleast_1d(np.asarray(t, dtype=float)).ravel())
    phi = np.mod(params.N * tt, 2 * np.pi)

    K1 = params.K[0]
    g1, g2, g3 = params.gamma
    e1, e2, e3 = params.eta
    eps = params.minus_sign
    tol = trunc.tail_tolerance
    h = min(abs(Hc), abs(Hs))
    tgt_p = 0.5 * tol * h / max(abs(g3), abs(e3))
    tgt_m = 0.5 * tol * h / max(abs(g2), abs(e2))
    Ap, bp, Mp = _sum(_series(params.kind, params.r, params.N, k, 1, K1, d), phi, tgt_p, params, trunc, d=d)
    Am, bm, Mm = _sum(_series(params.kind, params.r, params.N, k, -1, K1, d), phi, tgt_m, params, trunc, d=d)

    rot = 1j ** d
    s_k = sigma(params.kind, params.r, k, params.N) * float(k) ** d
    ep = np.exp(1j * k * tt)
    em = np.conj(ep)
    plus = rot * ep * Ap
    minus = rot * em * Am
    lead = rot * s_k * ep
    c = (g1 * lead + g3 * plus + eps * g2 * minus).real
    s = (e1 * lead + e3 * plus - eps * e2 * minus).imag
    cb = abs(g3) * bp + abs(g2) * bm
    sb = abs(e3) * bp + abs(e2) * bm
    guaranteed = (params.r > 0 and bool(np.all(cb <= tol * abs(Hc) * (1 + 1e-9)))
                  and bool(np.all(sb <= tol * abs(Hs) * (1 + 1e-9))))
    return KernelValues(c, s, cb, sb, np.maximum(Mp, Mm), guaranteed)


def _shape_like(t, arr):
    return float(arr[0]) if np.ndim(t) == 0 else arr.reshape(np.shape(t))


def kernel_cos(params: KernelParams, k: int, t, trunc: TruncationPolicy = DEFAULT_TRUNCATION, d: int = 0):
    """Cosine kernel of harmonic k (un-normalized)."""
    return _shape_like(t, kernel_values(params, k, t, trunc, d).cos)


def kernel_sin(params: KernelParams, k: int, t, trunc: TruncationPolicy = DEFAULT_TRUNCATION, d: int = 0):
    """Sine kernel of harmonic k (un-normalized)."""
    return _shape_like(t, kernel_values(params, k, t, trunc, d).sin)


def basis_value(params: KernelParams, k: int, t, trunc: TruncationPolicy = DEFAULT_TRUNCATION, d: int = 0):
    """Normalized basis pair ``(C_k(t), S_k(t))``."""
    Hc, Hs = kernel_normalizers(params, k, trunc)
    kv = kernel_values(params, k, t, trunc, d)
    return _shape_like(t, kv.cos / Hc), _shape_like(t, kv.sin / Hs)
