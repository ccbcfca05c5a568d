"""Block elementary factors of block lower triangular matrices.

The diagonal blocks are square but may differ in size. Factor ``E_j`` agrees
with ``A`` on the columns of block ``j`` and with the identity elsewhere, and
``A = E_0 E_1 ... E_{r-1}``.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import as_square, identity, mat_mul
from .errors import NotTriangularError, ShapeError, SingularMatrixError
from .oracle import oracle_inverse


@dataclass(frozen=True)
class BlockPartition:
    sizes: tuple

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise ShapeError(f"invalid block sizes {self.sizes}")
        object.__setattr__(self, "sizes", sizes)

    @property
    def n(self):
        return sum(self.sizes)

    @property
    def r(self):
        return len(self.sizes)

    def offset(self, j):
        """Number of rows/columns before block ``j``."""
        return sum(self.sizes[:j])

    def trailing(self, j):
        """Number of rows/columns after block ``j``."""
        return self.n - self.offset(j) - self.sizes[j]

    def span(self, j):
        start = self.offset(j)
        return slice(start, start + self.sizes[j])


@dataclass(frozen=True)
class BlockTriangularView:
    M: np.ndarray
    partition: BlockPartition

    def diagonal_block(self, j):
        s = self.partition.span(j)
        return self.M[s, s]


def block_triangular_view(M, sizes):
    M = as_square(M)
    part = sizes if isinstance(sizes, BlockPartition) else BlockPartition(tuple(sizes))
    if part.n != M.shape[0]:
        raise ShapeError(f"block sizes sum to {part.n}, matrix has order {M.shape[0]}")
    for j in range(part.r):
        s = part.span(j)
        above = np.abs(M[s, s.stop:]) > 0
        if above.any():
            i, c = (int(v) for v in np.argwhere(above)[0])
            pos = (s.start + i, s.stop + c)
            raise NotTriangularError(f"entry {pos} lies above the block diagonal", position=pos)
    return BlockTriangularView(M, part)


def block_factorize(view):
    factors = []
    for j in range(view.partition.r):
        s = view.partition.span(j)
        E = identity(view.M.shape[0], view.M.dtype)
        E[:, s] = view.M[:, s]
        factors.append(E)
    return factors


def block_elementary_inverse(E, view, j):
    """``E_j^-1 = I - (E_j - I) Diag(I, X_j^-1, I)``.

    ``X_j`` is inverted by pivoted elimination; a singular block raises
    :class:`SingularMatrixError` with ``index = j``.
    """
    s = view.partition.span(j)
    X = view.diagonal_block(j)
    try:
        X_inv = oracle_inverse(X)
    except SingularMatrixError as exc:
        raise SingularMatrixError(f"diagonal block {j} is singular", index=j, witness=X) from exc
    I = identity(view.M.shape[0], view.M.dtype)
    scale = I.copy()
    scale[s, s] = X_inv
    return I - mat_mul(E - I, scale)


def _block_column_chain(inverse_factors, part, c, j):
    # (E_{r-1})^-1 ... (E_j)^-1 e_c for a column c inside block j
    y = np.zeros(part.n, dtype=inverse_factors[0].dtype)
    y[c] = 1
    for i in range(j, part.r):
        s = part.span(i)
        V = inverse_factors[i]
        t = y[s].copy()
        low = y[s.stop:]
        for q in range(t.size):
            low = low + V[s.stop:, s.start + q] * t[q]
        y[s.stop:] = low
        diag = V[s, s.start] * t[0]
        for q in range(1, t.size):
            diag = diag + V[s, s.start + q] * t[q]
        y[s] = diag
    return y


def invert_block_triangular(view, workers=1):
    """``A^-1 = E_{r-1}^-1 ... E_0^-1``.

    Column ``c`` of the inverse, for ``c`` in block ``j``, is obtained by
    applying ``E_j^-1, ..., E_{r-1}^-1`` in turn to the unit vector ``e_c``.
    With all blocks 1 x 1 the arithmetic matches :func:`invert_triangular`
    operation for operation.
    """
    part = view.partition
    factors = block_factorize(view)
    inverses = [block_elementary_inverse(E, view, j) for j, E in enumerate(factors)]
    owner = [j for j in range(part.r) for _ in range(part.sizes[j])]
    X = np.zeros_like(view.M)

    def task(c):
        X[:, c] = _block_column_chain(inverses, part, c, owner[c])

    if workers == 1:
        for c in range(part.n):
            task(c)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(task, range(part.n)))
    return X
