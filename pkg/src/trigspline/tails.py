"""Summation of aliased harmonic series with controlled truncation.

Every infinite sum in the kernels has the form

    A(phi) = sum_{m >= 1} w_m exp(i m phi),

where beyond the summed head the weights follow an envelope
``w_m = scale * (-1)**(m*parity) * (m*N + c)**-p`` with ``|c| < N/2``.
The head (m <= M) is summed directly with the exact weights.  The tail is
either dropped (plain truncation, integral bound), expanded by repeated
summation by parts (``abel``), or replaced by the Hurwitz zeta tail when
the phase is close to zero (``zeta``).  Every evaluation carries a
rigorous bound on what is left out.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import zeta as hurwitz_zeta

MAX_ABEL_ORDER = 12
MIN_HEAD = 8
_CHUNK = 1 << 21
_BLOCK = 1024

PLAIN, ABEL, ZETA = 0, 1, 2


@dataclass(frozen=True)
class Envelope:
    """Tail weights ``scale * (-1)**(m*parity) * (m*N + c)**-p``."""

    N: int
    c: int
    p: int
    scale: float = 1.0
    parity: int = 0

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("envelope decay exponent must be >= 1")
        if not 2 * abs(self.c) < self.N:
            raise ValueError("envelope offset must satisfy |c| < N/2")


@lru_cache(maxsize=4096)
def _differences(N: int, c: int, p: int, M: int, J: int) -> tuple:
    """Forward differences ``Delta^l g(M+1)``, l = 0..J, for ``g(m) = (mN+c)**-p``.

    Computed in exact rational arithmetic; the alternating sums cancel far
    too badly for floating point once M is large.
    """
    g = [Fraction(1, ((M + 1 + i) * N + c) ** p) for i in range(J + 1)]
    out = []
    row = g
    for _ in range(J + 1):
        out.append(float(row[0]))
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    return tuple(out)


def _log_rising(p: int, J: int) -> float:
    return math.lgamma(p + J) - math.lgamma(p)


def integral_tail_bound(env: Envelope, M):
    """``sum_{m > M} (mN+c)**-p`` bounded by the integral from M."""
    M = np.asarray(M, dtype=float)
    if env.p == 1:
        return np.full(M.shape, np.inf)
    v = np.maximum(M, 1e-300) * env.N + env.c
    return v ** (1 - env.p) / (env.N * (env.p - 1))


def _terms_for_integral(env: Envelope, target: float) -> float:
    if env.p == 1:
        return np.inf
    # (MN + c)**(1-p) / (N (p-1)) <= target
    v = (target * env.N * (env.p - 1)) ** (-1.0 / (env.p - 1))
    return max(math.ceil((v - env.c) / env.N), 1)


def _abel_terms(env: Envelope, eps: np.ndarray, target: float, J: int) -> np.ndarray:
    """Smallest head length M for which the order-J remainder meets ``target``."""
    with np.errstate(divide="ignore"):
        logv = (math.log(2.0) + _log_rising(env.p, J) + J * math.log(env.N)
                - math.log(target) - (J + 1) * np.log(eps)) / (env.p + J)
    v = np.exp(np.minimum(logv, 700.0))
    M = np.ceil((v - env.c) / env.N - 1.0)
    return np.where(eps > 0, np.maximum(M, 0.0), np.inf)


def _abel_bound_estimate(env: Envelope, eps, M, J):
    v = (np.asarray(M, dtype=float) + 1.0) * env.N + env.c
    with np.errstate(divide="ignore", over="ignore"):
        logb = (math.log(2.0) + _log_rising(env.p, J) + J * math.log(env.N)
                - (env.p + J) * np.log(v) - (J + 1) * np.log(eps))
    return np.exp(np.minimum(logb, 700.0))


def _zeta_bound(env: Envelope, theta: np.ndarray, M) -> np.ndarray:
    """Bound on ``sum_{m>M} g(m) |z**m - 1|`` for ``z = exp(i theta)``."""
    th = np.abs(theta)
    M = np.maximum(np.asarray(M, dtype=float), 1.0)
    p = env.p
    lead = (2.0 / env.N) ** p
    if p >= 3:
        out = lead * th * M ** (2 - p) / (p - 2)
    elif p == 2:
        with np.errstate(divide="ignore"):
            L = np.maximum(M, np.floor(2.0 / np.where(th > 0, th, 1e-300)))
        out = lead * (th * np.log(L / M) + 2.0 / L)
        out = np.where(th > 0, out, 0.0)
    else:
        out = np.where(th > 0, np.inf, 0.0)
    return out


def _zeta_terms(env: Envelope, theta: np.ndarray, target: float) -> np.ndarray:
    th = np.abs(theta)
    if env.p < 2:
        return np.where(th == 0, float(MIN_HEAD), np.inf)
    if env.p == 2:
        ok = _zeta_bound(env, theta, MIN_HEAD) <= target
        return np.where(ok, float(MIN_HEAD), np.inf)
    lead = (2.0 / env.N) ** env.p
    with np.errstate(divide="ignore"):
        M = (lead * th / ((env.p - 2) * target)) ** (1.0 / (env.p - 2))
    return np.maximum(np.ceil(M), MIN_HEAD)


def _bucket(M: np.ndarray, cap: int) -> np.ndarray:
    """Round head lengths up to ``MIN_HEAD * 2**i`` so points share work."""
    M = np.maximum(M, MIN_HEAD)
    with np.errstate(divide="ignore", invalid="ignore"):
        b = MIN_HEAD * 2.0 ** np.ceil(np.log2(M / MIN_HEAD))
    return np.minimum(np.where(np.isfinite(b), b, cap), cap).astype(np.int64)


@dataclass(frozen=True)
class Plan:
    terms: np.ndarray
    order: np.ndarray
    method: np.ndarray


def plan_terms(env: Envelope, theta: np.ndarray, target: float, *, max_terms: int,
               min_terms: int = 1, accelerate: bool = True, fixed: bool = False) -> Plan:
    """Choose head length, acceleration order and method for each tail phase."""
    theta = np.asarray(theta, dtype=float)
    shape = theta.shape
    cap = int(max_terms)
    floor_ = max(int(min_terms), 1)
    if fixed:
        return Plan(np.full(shape, cap, np.int64), np.zeros(shape, np.int64),
                    np.full(shape, PLAIN, np.int64))
    if not accelerate:
        M = max(min(max(_terms_for_integral(env, target), floor_), cap), 1)
        return Plan(np.full(shape, M, np.int64), np.zeros(shape, np.int64),
                    np.full(shape, PLAIN, np.int64))

    eps = 2.0 * np.abs(np.sin(0.5 * theta))
    best_abel = np.full(shape, np.inf)
    for J in range(MAX_ABEL_ORDER + 1):
        best_abel = np.minimum(best_abel, _abel_terms(env, eps, target, J))
    zeta_M = _zeta_terms(env, theta, target)

    use_zeta = zeta_M <= best_abel
    need = np.where(use_zeta, zeta_M, best_abel)
    method = np.where(use_zeta, ZETA, ABEL)
    # nothing fits under the cap: spend the cap on the better-behaved route
    over = need > cap
    if np.any(over):
        zb = _zeta_bound(env, theta, cap)
        ab = np.full(shape, np.inf)
        for J in range(MAX_ABEL_ORDER + 1):
            ab = np.minimum(ab, _abel_bound_estimate(env, eps, cap, J))
        method = np.where(over, np.where(zb <= ab, ZETA, ABEL), method)
    M = np.maximum(_bucket(need, cap), min(floor_, cap))
    order = np.zeros(shape, np.int64)
    abel = method == ABEL
    if np.any(abel):
        order[abel] = _best_order(env, eps[abel], M[abel], target)
    return Plan(M, order, method)


def _best_order(env: Envelope, eps, M, target):
    """Least J meeting ``target`` at head length M, else the J of least bound."""
    est = np.stack([_abel_bound_estimate(env, eps, M, J) for J in range(MAX_ABEL_ORDER + 1)])
    ok = est <= target
    first_ok = np.argmax(ok, axis=0)
    return np.where(ok.any(axis=0), first_ok, np.argmin(est, axis=0))


def head_sum(weights: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """``sum_{m=1}^{M} w_m exp(i m phi)`` for every phase in ``phi``.

    Long heads are split into blocks of length B so that only
    ``exp(i j phi)`` (j <= B) and ``exp(i s B phi)`` need evaluating.
    """
    phi = np.asarray(phi, dtype=float)
    M = weights.size
    if phi.size == 0 or M == 0:
        return np.zeros(phi.shape, complex)
    if np.all(phi == 0.0):
        return np.full(phi.shape, math.fsum(weights), complex)
    B = min(M, _BLOCK)
    nb = -(-M // B)
    w = np.zeros(nb * B)
    w[:M] = weights
    W = w.reshape(nb, B)
    out = np.zeros(phi.shape, complex)
    step = max(_CHUNK // (B + nb), 1)
    for lo in range(0, phi.size, step):
        ph = phi[lo:lo + step]
        inner = np.exp(1j * np.multiply.outer(ph, np.arange(1, B + 1, dtype=float)))
        outer = np.exp(1j * np.multiply.outer(ph, B * np.arange(nb, dtype=float)))
        part = inner.real @ W.T + 1j * (inner.imag @ W.T)
        out[lo:lo + step] = np.sum(part * outer, axis=1)
    return out


def abel_tail(env: Envelope, theta: np.ndarray, M: int, J: int):
    """Order-J summation-by-parts expansion of ``sum_{m>M} g(m) z**m``.

    Returns ``(value, bound)`` with ``z = exp(i theta)``; the bound is
    ``2 |Delta^J g(M+1)| / |1 - z|**(J+1)``.
    """
    z = np.exp(1j * theta)
    omz = 1.0 - z
    d = _differences(env.N, env.c, env.p, int(M), int(J))
    ratio = z / omz
    acc = np.zeros(theta.shape, complex)
    for l in range(J - 1, -1, -1):
        acc = acc * ratio + d[l]
    value = np.exp(1j * theta * (M + 1)) / omz * acc
    bound = 2.0 * abs(d[J]) / np.abs(omz) ** (J + 1)
    return value, bound


def zeta_tail(env: Envelope, M: int) -> float:
    if env.p == 1:
        return math.inf
    return float(hurwitz_zeta(env.p, M + 1 + env.c / env.N)) * env.N ** (-env.p)


class AliasSeries:
    """One aliased series: exact head weights plus a tail envelope.

    ``weights(M)`` must return ``w_1..w_M``; it is called with increasing
    M and the longest result is kept.
    """

    def __init__(self, weights, envelope: Envelope):
        self._weights_fn = weights
        self.envelope = envelope
        self._w = np.zeros(0)
        self._lock = threading.Lock()

    def weights(self, M: int) -> np.ndarray:
        with self._lock:
            if self._w.size < M:
                self._w = np.asarray(self._weights_fn(int(M)), dtype=float)
            return self._w[:M]

    def evaluate(self, phi, target: float, *, max_terms: int, min_terms: int = 1,
                 accelerate: bool = True, fixed: bool = False):
        """Sum the series at head phases ``phi``.

        Returns ``(value, bound, terms)``: complex sums, bounds on the
        omitted remainder (already multiplied by ``|scale|``), and the head
        length used at each phase.
        """
        env = self.envelope
        phi = np.atleast_1d(np.asarray(phi, dtype=float))
        theta = np.mod(phi + np.pi * env.parity + np.pi, 2 * np.pi) - np.pi
        scale = abs(env.scale)
        tgt = target / scale if scale > 0 else np.inf
        plan = plan_terms(env, theta, tgt, max_terms=max_terms, min_terms=min_terms,
                          accelerate=accelerate, fixed=fixed)
        value = np.zeros(phi.shape, complex)
        bound = np.zeros(phi.shape)
        keys = np.stack([plan.terms, plan.order, plan.method], axis=-1)
        for key in np.unique(keys, axis=0):
            M, J, method = (int(x) for x in key)
            idx = np.all(keys == key, axis=-1)
            v = head_sum(self.weights(M), phi[idx])
            if method == PLAIN:
                b = np.full(v.shape, float(integral_tail_bound(env, M)))
            elif method == ZETA:
                v = v + env.scale * zeta_tail(env, M)
                b = _zeta_bound(env, theta[idx], M)
            else:
                tv, b = abel_tail(env, theta[idx], M, J)
                v = v + env.scale * tv
            value[idx] = v
            bound[idx] = b * scale
        return value, bound, plan.terms
