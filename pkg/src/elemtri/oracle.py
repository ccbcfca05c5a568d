"""Reference implementations used to validate the main algorithms.

Nothing here calls into the elementary-factor, powers, Hessenberg or block
modules, so agreement between the two routes is real evidence.
"""

import numpy as np

from .core import as_square, mat_mul
from .errors import ShapeError, SingularMatrixError

PIVOT_RTOL = 1e-12


def oracle_inverse(M, pivot_rtol=PIVOT_RTOL):
    """Gauss-Jordan inverse with partial pivoting.

    Raises :class:`SingularMatrixError` when the best available pivot at
    some step has magnitude at most ``pivot_rtol * ||M||_inf``; the error's
    ``index`` is that elimination step.
    """
    M = as_square(M)
    n = M.shape[0]
    aug = np.hstack([M, np.eye(n, dtype=M.dtype)])
    threshold = pivot_rtol * np.max(np.sum(np.abs(M), axis=1))
    for col in range(n):
        piv = col + int(np.argmax(np.abs(aug[col:, col])))
        if abs(aug[piv, col]) <= max(threshold, 1e-300):
            raise SingularMatrixError(
                f"matrix is singular to working precision at elimination step {col}",
                index=col,
                witness=M,
            )
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        aug[col] = aug[col] / aug[col, col]
        for row in range(n):
            if row != col and aug[row, col] != 0:
                aug[row] = aug[row] - aug[row, col] * aug[col]
    return np.ascontiguousarray(aug[:, n:])


def oracle_power(M, m):
    """``M`` multiplied by itself ``m`` times, left to right; ``m = 0`` gives I."""
    M = as_square(M)
    if m < 0:
        raise ValueError("power must be non-negative")
    out = np.eye(M.shape[0], dtype=M.dtype)
    for _ in range(m):
        out = mat_mul(out, M)
    return out


def oracle_divided_difference(nodes, degree, min_gap=1e-9):
    """Divided difference of ``t**degree`` over pairwise-distinct nodes.

    Uses the classical triangular table
    ``f[x_i..x_j] = (f[x_{i+1}..x_j] - f[x_i..x_{j-1}]) / (x_j - x_i)``.
    Coincident nodes are rejected.
    """
    x = np.asarray(nodes)
    if x.ndim != 1 or x.size == 0:
        raise ShapeError("need a non-empty list of nodes")
    p = x.size
    for i in range(p):
        for j in range(i + 1, p):
            if abs(x[i] - x[j]) <= min_gap:
                raise ValueError(f"nodes {i} and {j} coincide; the table cannot handle confluence")
    table = [xi ** degree for xi in x]
    for level in range(1, p):
        table = [(table[i + 1] - table[i]) / (x[i + level] - x[i]) for i in range(p - level)]
    return table[0]
