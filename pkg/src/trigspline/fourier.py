"""Finite Fourier series on odd-sized uniform grids.

Coefficients are obtained by direct summation over the nodes, which is
exact in the discrete-orthogonality sense and cheap at the sizes used
here (no FFT path).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridSpec, all_nodes, reduce_angle


class SampleError(ValueError):
    """Sample values inconsistent with their grid."""


@dataclass(frozen=True)
class SampleSet:
    """Values ``f_j`` at the nodes of ``grid``."""

    grid: GridSpec
    values: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in np.ravel(np.asarray(self.values, dtype=float)))
        if len(vals) != self.grid.N:
            raise SampleError(
                f"expected N = 2n+1 = {self.grid.N} values, got {len(vals)}")
        if not all(np.isfinite(vals)):
            raise SampleError("sample values must be finite")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_values(cls, values, indicator: int = 0) -> "SampleSet":
        vals = np.ravel(np.asarray(values, dtype=float))
        return cls(GridSpec.from_size(len(vals), indicator), tuple(vals))

    @classmethod
    def from_function(cls, func, grid: GridSpec) -> "SampleSet":
        return cls(grid, tuple(func(all_nodes(grid))))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.values)

    @property
    def nodes(self) -> np.ndarray:
        return all_nodes(self.grid)


@dataclass(frozen=True)
class FourierCoefficients:
    """``a0`` and the cosine/sine coefficients ``a_k``, ``b_k`` for k = 1..n."""

    a0: float
    a: tuple
    b: tuple

    def __post_init__(self):
        a = tuple(float(x) for x in self.a)
        b = tuple(float(x) for x in self.b)
        if len(a) != len(b) or not a:
            raise ValueError("cosine and sine coefficient lists must have equal length n >= 1")
        if not (np.isfinite(self.a0) and all(np.isfinite(a)) and all(np.isfinite(b))):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return len(self.a)


def compute_coefficients(samples: SampleSet) -> FourierCoefficients:
    """Finite Fourier coefficients of ``samples`` on their own grid."""
    f = samples.array
    t = samples.nodes
    N = samples.grid.N
    k = np.arange(1, samples.grid.n + 1)
    arg = np.outer(k, t)
    a = (2.0 / N) * (np.cos(arg) @ f)
    b = (2.0 / N) * (np.sin(arg) @ f)
    return FourierCoefficients((2.0 / N) * f.sum(), tuple(a), tuple(b))


def eval_trig_polynomial(coeffs: FourierCoefficients, t):
    """Evaluate ``a0/2 + sum_k a_k cos kt + b_k sin kt`` at ``t``."""
    tt = reduce_angle(t)
    k = np.arange(1, coeffs.n + 1)
    arg = np.multiply.outer(tt, k)
    out = 0.5 * coeffs.a0 + np.cos(arg) @ np.asarray(coeffs.a) + np.sin(arg) @ np.asarray(coeffs.b)
    return float(out) if np.ndim(out) == 0 else out
