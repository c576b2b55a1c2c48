"""Convergence factors and their sign-control exponents.

Two families are provided, both decaying like ``k**-(1+r)``:

* ``POWER``   -- ``k**-(1+r)``, positive for every k;
* ``RIEMANN`` -- ``(sin(pi k/N) / (pi k/N))**(1+r)``, sign-changing, with
  zeros at multiples of N.
"""

from __future__ import annotations

import enum
import math
import numbers

import numpy as np


class FactorKind(enum.Enum):
    POWER = "power"
    RIEMANN = "riemann"

    @classmethod
    def parse(cls, value) -> "FactorKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown factor kind {value!r}; use 'power' or 'riemann'") from None


def check_order(r) -> int:
    """Validate a spline order; only non-negative integers are accepted."""
    if isinstance(r, bool) or not isinstance(r, numbers.Real) or r != int(r):
        raise ValueError(f"order r must be a non-negative integer, got {r!r}")
    if r < 0:
        raise ValueError(f"order r must be a non-negative integer, got {r!r}")
    return int(r)


def sigma(kind, r: int, k, N: int):
    """Convergence factor ``sigma(r, k)`` of the given family.

    ``k`` may be an integer or an integer array; ``N`` is only used by the
    Riemann family.  ``k = 0`` is rejected.
    """
    kind = FactorKind.parse(kind)
    r = check_order(r)
    kk = np.asarray(k)
    if not np.issubdtype(kk.dtype, np.integer):
        if not np.all(kk == np.round(kk)):
            raise ValueError("harmonic index k must be integral")
        kk = kk.astype(np.int64)
    if np.any(kk < 1):
        raise ValueError("sigma is defined for harmonic indices k >= 1 only")
    p = 1 + r
    if kind is FactorKind.POWER:
        out = kk.astype(float) ** (-p)
    else:
        # exact integer reduction of the sine argument keeps large k accurate
        red = np.mod(kk, 2 * N)
        s = np.sin(np.pi * red / N)
        s = np.where(np.mod(kk, N) == 0, 0.0, s)
        out = (s / (np.pi * kk / N)) ** p
    return float(out) if np.ndim(out) == 0 else out


def k1_k2(kind, r: int, I1: int, I2: int) -> tuple:
    """Exponents controlling the alternation in the kernels and normalizers."""
    kind = FactorKind.parse(kind)
    if kind is FactorKind.RIEMANN:
        return r + 1 + I1, r + 1 + I1 + I2
    return I1, I1 + I2


def alias_form(kind, r: int, k: int, N: int, sign: int) -> tuple:
    """Envelope of the aliased factors ``sigma(r, m*N + sign*k)``.

    Returns ``(scale, parity)`` such that for every m >= 1

        sigma(r, m*N + sign*k) == scale * (-1)**(m*parity) * (m*N + sign*k)**-(1+r)

    The power family is its own envelope.  For the Riemann family this is
    the identity ``sin(pi (mN +- k)/N) = +-(-1)**m sin(pi k / N)``.
    """
    kind = FactorKind.parse(kind)
    p = 1 + r
    if kind is FactorKind.POWER:
        return 1.0, 0
    c = (N * math.sin(math.pi * k / N) / math.pi) ** p
    if sign < 0:
        c *= (-1) ** p
    return c, p % 2
