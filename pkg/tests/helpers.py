"""Shared helpers for the test suite (independent of the package internals)."""

from fractions import Fraction

import numpy as np

REFERENCE = (2.0, 1.0, 3.0, 2.0, 4.0, 1.0, 3.0, 1.0, 3.0)

# Lines collected by the acceptance tests, printed in the terminal summary.
ACCEPTANCE_LINES: list = []


def fd_weights(offsets, order):
    """Exact finite-difference weights for ``f^(order)(0)`` from samples at
    ``offsets`` (in units of the step), via the Vandermonde system."""
    offsets = [Fraction(o) for o in offsets]
    n = len(offsets)
    A = [[o ** i for o in offsets] for i in range(n)]
    b = [Fraction(0)] * n
    fact = 1
    for i in range(1, order + 1):
        fact *= i
    b[order] = Fraction(fact)
    # Gaussian elimination in exact arithmetic
    for c in range(n):
        p = next(i for i in range(c, n) if A[i][c] != 0)
        A[c], A[p] = A[p], A[c]
        b[c], b[p] = b[p], b[c]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c] / A[c][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
                b[i] -= f * b[c]
    return np.array([float(b[i] / A[i][i]) for i in range(n)])


def one_sided_derivatives(func, nodes, h, order, npts):
    """Backward and forward difference estimates of ``func^(order)`` at nodes."""
    offs = np.arange(npts)
    w_fwd = fd_weights(offs, order)
    w_bwd = fd_weights(-offs, order)
    nodes = np.asarray(nodes, float)
    fwd = func((nodes[:, None] + h * offs[None, :]).ravel()).reshape(nodes.size, npts) @ w_fwd
    bwd = func((nodes[:, None] - h * offs[None, :]).ravel()).reshape(nodes.size, npts) @ w_bwd
    return bwd / h ** order, fwd / h ** order


def random_odd_data(rng, N):
    return tuple(float(x) for x in rng.normal(size=N))
