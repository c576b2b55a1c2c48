"""Uniform grids on the period [0, 2*pi).

Two grids with ``N = 2n + 1`` nodes are supported.  Indicator 0 is the
grid starting at the origin, ``t_j = 2*pi*(j - 1)/N``; indicator 1 is the
same grid shifted by half a step, ``t_j = pi*(2j - 1)/N``.  Node indices
are 1-based at every public entry point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi


class GridError(ValueError):
    """Invalid grid definition or node index."""


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid of ``N = 2n + 1`` nodes of type ``indicator``."""

    n: int
    indicator: int = 0

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise GridError(f"polynomial order n must be an integer >= 1, got {self.n!r}")
        if self.indicator not in (0, 1):
            raise GridError(f"grid indicator must be 0 or 1, got {self.indicator!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "indicator", int(self.indicator))

    @property
    def N(self) -> int:
        return 2 * self.n + 1

    @property
    def step(self) -> float:
        return TWO_PI / self.N

    @classmethod
    def from_size(cls, N: int, indicator: int = 0) -> "GridSpec":
        """Grid with ``N`` nodes; ``N`` must be odd and at least 3."""
        if isinstance(N, bool) or int(N) != N or N < 3 or N % 2 == 0:
            raise GridError(f"node count must be odd, N = 2n+1 >= 3, got {N!r}")
        return cls((int(N) - 1) // 2, indicator)


def node(grid: GridSpec, j: int) -> float:
    """Angle of node ``j`` (1-based) of ``grid``."""
    if isinstance(j, bool) or int(j) != j or not 1 <= j <= grid.N:
        raise GridError(f"node index must lie in 1..{grid.N}, got {j!r}")
    j = int(j)
    if grid.indicator == 0:
        return TWO_PI * (j - 1) / grid.N
    return np.pi * (2 * j - 1) / grid.N


def all_nodes(grid: GridSpec) -> np.ndarray:
    """All ``N`` node angles in increasing order."""
    j = np.arange(1, grid.N + 1)
    if grid.indicator == 0:
        return TWO_PI * (j - 1) / grid.N
    return np.pi * (2 * j - 1) / grid.N


def reduce_angle(t):
    """Reduce angles into ``[0, 2*pi)``."""
    r = np.mod(np.asarray(t, dtype=float), TWO_PI)
    # np.mod can round up to exactly 2*pi for tiny negative inputs
    return np.where(r >= TWO_PI, 0.0, r)


def orthogonality_table(grid: GridSpec):
    """Discrete inner products of ``1, cos kt, sin kt`` (k <= n) on the nodes.

    Returns ``(cc, ss, sc)`` with ``cc[k, m] = sum_j cos(k t_j) cos(m t_j)``
    and likewise for sine-sine and sine-cosine, for ``0 <= k, m <= n``.
    """
    t = all_nodes(grid)
    k = np.arange(grid.n + 1)
    c = np.cos(np.outer(k, t))
    s = np.sin(np.outer(k, t))
    return c @ c.T, s @ s.T, s @ c.T


def orthogonality_deviation(grid: GridSpec) -> float:
    """Largest deviation of the discrete inner products from ``{0, N/2, N}``."""
    cc, ss, sc = orthogonality_table(grid)
    N = grid.N
    want_cc = np.diag(np.r_[N, np.full(grid.n, N / 2)])
    want_ss = np.diag(np.r_[0.0, np.full(grid.n, N / 2)])
    return float(max(
        np.max(np.abs(cc - want_cc)),
        np.max(np.abs(ss - want_ss)),
        np.max(np.abs(sc)),
    ))
