"""Column and row elementary factors of lower triangular matrices.

A lower triangular ``A`` is the product ``E_0 E_1 ... E_{n-1}`` of its column
elementary factors, where ``E_k`` is the identity with column ``k`` replaced
by column ``k`` of ``A``. Likewise ``A = F_0 F_1 ... F_{n-1}`` with ``F_k`` the
identity whose row ``k`` is row ``k`` of ``A``. Indices are 0-based
throughout.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import UNDERFLOW_GUARD, as_square, identity, mat_mul
from .errors import NotTriangularError, ShapeError, SingularMatrixError, SizeGuardError

COLUMN = "column"
ROW = "row"

MAX_SUBSET_N = 20


def check_lower_triangular(A, tol=0.0):
    """Return ``A`` as an array, raising if anything sits above the diagonal."""
    A = as_square(A)
    upper = np.abs(np.triu(A, 1)) > tol
    if upper.any():
        i, j = (int(v) for v in np.argwhere(upper)[0])
        raise NotTriangularError(f"entry ({i}, {j}) lies above the diagonal", position=(i, j))
    return A


def check_diagonal(A):
    """Raise :class:`SingularMatrixError` naming the first (near-)zero diagonal entry."""
    small = np.abs(np.diag(A)) <= UNDERFLOW_GUARD
    if small.any():
        k = int(np.argmax(small))
        raise SingularMatrixError(f"diagonal entry {k} is zero", index=k)


@dataclass(frozen=True)
class ElementaryFactor:
    """Compact column or row elementary triangular matrix.

    For a column factor ``entries`` holds ``a[k:, k]`` (diagonal first); for
    a row factor it holds ``a[k, :k+1]`` (diagonal last).
    """

    n: int
    index: int
    orientation: str
    entries: np.ndarray

    def __post_init__(self):
        if self.orientation not in (COLUMN, ROW):
            raise ValueError(f"unknown orientation {self.orientation!r}")
        if not 0 <= self.index < self.n:
            raise IndexError(f"index {self.index} out of range for n={self.n}")
        expected = self.n - self.index if self.orientation == COLUMN else self.index + 1
        if len(self.entries) != expected:
            raise ShapeError(f"expected {expected} stored entries, got {len(self.entries)}")

    @property
    def diagonal(self):
        return self.entries[0] if self.orientation == COLUMN else self.entries[-1]

    @property
    def is_invertible(self):
        return abs(self.diagonal) > UNDERFLOW_GUARD

    def dense(self):
        out = identity(self.n, np.asarray(self.entries).dtype)
        k = self.index
        if self.orientation == COLUMN:
            out[k:, k] = self.entries
        else:
            out[k, :k + 1] = self.entries
        return out

    def part(self):
        """Dense ``factor - I``: the single nonzero column (or row)."""
        return self.dense() - identity(self.n, np.asarray(self.entries).dtype)

    def inverse(self):
        return elementary_inverse(self)


@dataclass(frozen=True)
class ChainTerm:
    """The one-column matrix ``G(K)``: a scalar times a column of ``C_{k1}``
    moved from column ``source_index`` to column ``target_column``.

    ``column_values`` is the full length-``n`` column of ``C_{k1}``
    (zeros above row ``k1``).
    """

    n: int
    coefficient: complex
    source_index: int
    target_column: int
    column_values: np.ndarray

    def dense(self):
        out = np.zeros((self.n, self.n), dtype=np.result_type(self.column_values, self.coefficient))
        out[:, self.target_column] = self.coefficient * self.column_values
        return out


def column_part(A, k):
    """``C_k = E_k - I`` as a :class:`ChainTerm` (the singleton ``G({k})``)."""
    A = check_lower_triangular(A)
    n = A.shape[0]
    if not 0 <= k < n:
        raise IndexError(f"index {k} out of range for n={n}")
    col = np.zeros(n, dtype=A.dtype)
    col[k:] = A[k:, k]
    col[k] -= 1
    return ChainTerm(n, A.dtype.type(1), k, k, col)


def factorize_columns(A):
    A = check_lower_triangular(A)
    n = A.shape[0]
    return [ElementaryFactor(n, k, COLUMN, A[k:, k].copy()) for k in range(n)]


def factorize_rows(A):
    A = check_lower_triangular(A)
    n = A.shape[0]
    return [ElementaryFactor(n, k, ROW, A[k, :k + 1].copy()) for k in range(n)]


def multiply_factors(factors):
    """Dense left-to-right product of a sequence of factors (or dense matrices)."""
    mats = [f.dense() if isinstance(f, ElementaryFactor) else np.asarray(f) for f in factors]
    out = mats[0].copy()
    for M in mats[1:]:
        out = mat_mul(out, M)
    return out


def elementary_inverse(E):
    """Inverse of an elementary factor, ``I - (E - I) / a_kk``.

    The result is an elementary factor with the same index and orientation.
    """
    if not E.is_invertible:
        raise SingularMatrixError(f"elementary factor {E.index} has a zero diagonal entry", index=E.index)
    entries = np.asarray(E.entries)
    inv = 1 / E.diagonal
    d = 0 if E.orientation == COLUMN else len(entries) - 1
    new = -(inv * entries)
    new[d] = 1 - inv * (entries[d] - 1)
    return ElementaryFactor(E.n, E.index, E.orientation, new)


def companion_matrix(A, orientation=COLUMN):
    """The triangular matrix whose elementary factors invert those of ``A``.

    Column orientation gives ``I + (I - A) D^-1``, row orientation
    ``I + D^-1 (I - A)``, with ``D`` the diagonal of ``A``.
    """
    A = check_lower_triangular(A)
    check_diagonal(A)
    n = A.shape[0]
    inv = 1 / np.diag(A)
    I = identity(n, A.dtype)
    if orientation == COLUMN:
        return I + (I - A) * inv[np.newaxis, :]
    if orientation == ROW:
        return I + inv[:, np.newaxis] * (I - A)
    raise ValueError(f"unknown orientation {orientation!r}")


def _inverse_columns(A):
    # column k holds the nontrivial column of (E_k)^-1
    n = A.shape[0]
    V = np.zeros_like(A)
    for E in factorize_columns(A):
        V[E.index:, E.index] = elementary_inverse(E).entries
    return V


def _column_chain(V, j):
    # (E_{n-1})^-1 ... (E_j)^-1 e_j, applying one factor at a time
    n = V.shape[0]
    y = np.zeros(n, dtype=V.dtype)
    y[j] = 1
    for i in range(j, n):
        t = y[i]
        y[i + 1:] = y[i + 1:] + V[i + 1:, i] * t
        y[i] = V[i, i] * t
    return y


def incremental_inverses(A):
    """Yield the accumulators ``(E_{n-1})^-1 ... (E_k)^-1`` for ``k = n-1, ..., 0``.

    Each step changes only column ``k``, which is then final: the last
    yielded matrix is ``A^-1``.
    """
    A = check_lower_triangular(A)
    check_diagonal(A)
    V = _inverse_columns(A)
    X = identity(A.shape[0], A.dtype)
    for k in range(A.shape[0] - 1, -1, -1):
        X[:, k] = _column_chain(V, k)
        yield X.copy()


def invert_triangular(A):
    """Inverse of a lower triangular matrix as ``(E_{n-1})^-1 ... (E_0)^-1``.

    The accumulator is multiplied on the right by one inverse factor at a
    time, starting from the last, so columns are completed from the last to
    the first. Multiplying the accumulator by ``(E_k)^-1`` only rewrites
    column ``k``, which is evaluated by pushing that factor's column through
    the factors already absorbed.
    """
    A = check_lower_triangular(A)
    check_diagonal(A)
    V = _inverse_columns(A)
    X = identity(A.shape[0], A.dtype)
    for k in range(A.shape[0] - 1, -1, -1):
        X[:, k] = _column_chain(V, k)
    return X


def invert_columns_parallel(A, workers=None):
    """Column-parallel version of :func:`invert_triangular`.

    Column ``j`` of the inverse depends only on factors ``j..n-1``, so the
    columns are independent tasks. Each runs exactly the same arithmetic as
    the sequential path, so the output is bit-identical for any ``workers``.
    """
    A = check_lower_triangular(A)
    check_diagonal(A)
    V = _inverse_columns(A)
    n = A.shape[0]
    X = identity(n, A.dtype)

    def task(j):
        X[:, j] = _column_chain(V, j)

    if workers == 1:
        for j in range(n):
            task(j)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(task, range(n)))
    return X


def invert_triangular_rows(A):
    """Inverse via row factors, ``(F_{n-1})^-1 ... (F_0)^-1``, built row by row.

    Row ``i`` of the inverse is ``e_i^T (F_i)^-1 ... (F_0)^-1``.
    """
    A = check_lower_triangular(A)
    check_diagonal(A)
    n = A.shape[0]
    W = np.zeros_like(A)
    for F in factorize_rows(A):
        W[F.index, :F.index + 1] = elementary_inverse(F).entries
    X = identity(n, A.dtype)
    for i in range(n):
        r = np.zeros(n, dtype=A.dtype)
        r[i] = 1
        for l in range(i, -1, -1):
            t = r[l]
            r[:l] = r[:l] + W[l, :l] * t
            r[l] = W[l, l] * t
        X[i] = r
    return X


def section_inverses(A):
    """Yield ``P_k = F_{k-1} ... F_0`` restricted to its leading k x k block, k = 1..n.

    ``P_k`` inverts the leading k x k section of
    ``companion_matrix(A, "row")``. Consecutive terms differ only in their
    last row, which is ``a_kk e_k + sum_{j<k} a_kj P_{k-1}[j]``.
    """
    A = check_lower_triangular(A)
    check_diagonal(A)
    n = A.shape[0]
    P = np.zeros_like(A)
    for k in range(n):
        row = np.zeros(n, dtype=A.dtype)
        row[k] = A[k, k]
        for j in range(k):
            row = row + A[k, j] * P[j]
        P[k] = row
        yield P[:k + 1, :k + 1].copy()


def _validate_indices(K, n):
    K = [int(k) for k in K]
    if not K:
        raise ValueError("index set must be non-empty")
    bad = [k for k in K if not 0 <= k < n]
    if bad:
        raise IndexError(f"indices {bad} out of range for n={n}")
    if len(set(K)) != len(K):
        raise ValueError("index set has repeated elements")
    return K


def chain_product(A, K):
    """``G(K) = a[k1,k2] a[k2,k3] ... a[k_{r-1},k_r] C_{k1} L^(k1-k_r)`` for ``K`` sorted descending.

    Equals the explicit product ``C_{k1} C_{k2} ... C_{k_r}``; a singleton
    gives ``C_k``.
    """
    A = check_lower_triangular(A)
    K = sorted(_validate_indices(K, A.shape[0]), reverse=True)
    term = column_part(A, K[0])
    coef = term.coefficient
    for a, b in zip(K, K[1:]):
        coef = coef * A[a, b]
    return ChainTerm(term.n, coef, K[0], K[-1], term.column_values)


def iter_chains(A, K, max_len=None):
    """Yield ``(J, G(J))`` for nonempty ``J`` contained in ``K`` with ``|J| <= max_len``.

    ``J`` is a descending tuple. Subsets whose chain meets a zero link
    ``a[k_i, k_{i+1}] == 0`` are skipped along with all their extensions,
    since every such ``G(J)`` vanishes. The order is fixed (depth first over
    descending ``K``), so sums over the output are deterministic.
    """
    K = sorted(K, reverse=True)
    max_len = len(K) if max_len is None else max_len
    if max_len < 1:
        return
    parts = {k: column_part(A, k) for k in K}

    def extend(chain, coef, pos):
        head = parts[chain[0]]
        yield chain, ChainTerm(head.n, coef, chain[0], chain[-1], head.column_values)
        if len(chain) == max_len:
            return
        for nxt in range(pos + 1, len(K)):
            link = A[chain[-1], K[nxt]]
            if link == 0:
                continue
            yield from extend(chain + (K[nxt],), coef * link, nxt)

    one = A.dtype.type(1)
    for pos, k in enumerate(K):
        yield from extend((k,), one, pos)


def product_of_factors_descending(A, K, max_n=MAX_SUBSET_N):
    """``E_{k1} E_{k2} ... E_{kr}`` for strictly descending ``K``, as ``I + sum G(J)``.

    The sum runs over nonempty subsets of ``K``; with ``K = (n-1, ..., 0)``
    this is ``B^-1`` for the column companion matrix ``B``.
    """
    A = check_lower_triangular(A)
    K = _validate_indices(K, A.shape[0])
    if any(a <= b for a, b in zip(K, K[1:])):
        raise ValueError(f"indices must be strictly descending, got {K}")
    if len(K) > max_n:
        raise SizeGuardError(f"{len(K)} factors exceed the subset-enumeration guard of {max_n}")
    out = identity(A.shape[0], A.dtype)
    for _, term in iter_chains(A, K):
        out[:, term.target_column] += term.coefficient * term.column_values
    return out


def elementary_power(E, m):
    """``E^m = I + (1 + x + ... + x^(m-1)) (E - I)`` with ``x`` the diagonal entry."""
    if m < 0:
        raise ValueError("power must be non-negative")
    x = E.diagonal
    c = 0 * x
    for _ in range(m):
        c = c * x + 1
    return identity(E.n, np.asarray(E.entries).dtype) + c * E.part()
