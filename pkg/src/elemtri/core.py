"""Dense matrix substrate shared by every other module.

Matrices are plain 2-D numpy arrays in C (row-major) order with dtype
``float64`` or ``complex128``. Mixing the two in one operation is an error.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ScalarMismatchError, ShapeError

DEFAULT_TOL = 1e-10

# diagonal entries at or below this magnitude count as exact zeros
UNDERFLOW_GUARD = 1e-300


def as_matrix(x, dtype=None):
    """Return ``x`` as a C-contiguous 2-D float64 or complex128 array."""
    arr = np.asarray(x)
    if dtype is None:
        dtype = np.complex128 if np.iscomplexobj(arr) else np.float64
    arr = np.array(arr, dtype=dtype, order="C", copy=True)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ShapeError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    return arr


def as_square(x):
    M = as_matrix(x)
    if M.shape[0] != M.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {M.shape}")
    return M


def check_same_scalar(*mats):
    kinds = {np.iscomplexobj(m) for m in mats}
    if len(kinds) > 1:
        raise ScalarMismatchError("cannot mix real and complex matrices")


def identity(n, dtype=np.float64):
    return np.eye(n, dtype=dtype)


def shift_matrix(n, dtype=np.float64):
    """The n x n shift matrix with ones on the first subdiagonal.

    Right-multiplying by it moves every column one place to the left and
    leaves a zero last column.
    """
    if n < 1:
        raise ShapeError("n must be positive")
    return np.eye(n, k=-1, dtype=dtype)


def mat_mul(X, Y):
    """Matrix product with a fixed left-to-right summation over the inner index.

    Every output entry is accumulated as ``((x0*y0 + x1*y1) + x2*y2) + ...``
    regardless of platform BLAS, so results are bit-reproducible.
    """
    X = np.asarray(X)
    Y = np.asarray(Y)
    check_same_scalar(X, Y)
    if X.ndim != 2 or Y.ndim != 2 or X.shape[1] != Y.shape[0]:
        raise ShapeError(f"cannot multiply {X.shape} by {Y.shape}")
    out = np.zeros((X.shape[0], Y.shape[1]), dtype=np.result_type(X, Y))
    for p in range(X.shape[1]):
        out += np.multiply.outer(X[:, p], Y[p, :])
    return out


def mat_power(M, m):
    """Repeated product M·M·…·M (m factors) using :func:`mat_mul`."""
    M = as_square(M)
    out = identity(M.shape[0], M.dtype)
    for _ in range(m):
        out = mat_mul(out, M)
    return out


@dataclass(frozen=True)
class BlockSpec:
    row_splits: tuple
    col_splits: tuple

    def __post_init__(self):
        object.__setattr__(self, "row_splits", tuple(int(s) for s in self.row_splits))
        object.__setattr__(self, "col_splits", tuple(int(s) for s in self.col_splits))
        if any(s < 1 for s in self.row_splits + self.col_splits):
            raise ShapeError("block sizes must be positive")

    @property
    def shape(self):
        return sum(self.row_splits), sum(self.col_splits)


def _offsets(splits):
    return np.concatenate([[0], np.cumsum(splits)]).astype(int)


def block_extract(M, spec):
    """Cut ``M`` into a grid (list of lists) of blocks according to ``spec``."""
    M = np.asarray(M)
    if M.shape != spec.shape:
        raise ShapeError(f"matrix shape {M.shape} does not match block spec {spec.shape}")
    ro, co = _offsets(spec.row_splits), _offsets(spec.col_splits)
    return [
        [M[ro[i]:ro[i + 1], co[j]:co[j + 1]].copy() for j in range(len(spec.col_splits))]
        for i in range(len(spec.row_splits))
    ]


def block_compose(blocks):
    """Assemble a grid of blocks into one matrix, checking that dimensions line up."""
    grid = [[np.asarray(b) for b in row] for row in blocks]
    if not grid or not grid[0]:
        raise ShapeError("empty block grid")
    ncols = len(grid[0])
    if any(len(row) != ncols for row in grid):
        raise ShapeError("ragged block grid")
    check_same_scalar(*[b for row in grid for b in row])
    for row in grid:
        if any(b.ndim != 2 for b in row):
            raise ShapeError("blocks must be 2-D")
        if len({b.shape[0] for b in row}) != 1:
            raise ShapeError("blocks in one grid row must share a row count")
    for j in range(ncols):
        if len({row[j].shape[1] for row in grid}) != 1:
            raise ShapeError("blocks in one grid column must share a column count")
    return np.ascontiguousarray(np.block(grid))


def frobenius_norm(M):
    return float(np.sqrt(np.sum(np.abs(np.asarray(M)) ** 2)))


def approx_eq(X, Y, tol=DEFAULT_TOL):
    """True iff ``||X - Y||_F <= tol * max(1, ||Y||_F)``."""
    X = np.asarray(X)
    Y = np.asarray(Y)
    if X.shape != Y.shape:
        raise ShapeError(f"shape mismatch: {X.shape} vs {Y.shape}")
    return frobenius_norm(X - Y) <= tol * max(1.0, frobenius_norm(Y))


def relative_error(X, Y):
    """``||X - Y||_F / max(1, ||Y||_F)``, the quantity bounded by :func:`approx_eq`."""
    return frobenius_norm(np.asarray(X) - np.asarray(Y)) / max(1.0, frobenius_norm(Y))


def is_lower_triangular(M, tol=0.0):
    M = np.asarray(M)
    return M.shape[0] == M.shape[1] and bool(np.all(np.abs(np.triu(M, 1)) <= tol))


def is_identity(M, tol=0.0):
    M = np.asarray(M)
    return M.shape[0] == M.shape[1] and bool(np.all(np.abs(M - np.eye(M.shape[0])) <= tol))


def is_k_hessenberg(M, k, tol=0.0):
    """Entries with column index exceeding row index by more than ``k`` vanish."""
    M = np.asarray(M)
    return M.shape[0] == M.shape[1] and bool(np.all(np.abs(np.triu(M, k + 1)) <= tol))


def is_zero(s, tol=0.0):
    return abs(s) <= tol
