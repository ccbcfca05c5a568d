"""Explicit inverses of strict lower k-Hessenberg matrices.

An n x n matrix ``H`` is lower k-Hessenberg when ``H[i, j] == 0`` for
``j > i + k`` and strict when every ``H[i, i + k]`` is nonzero. Splitting
``H = [[B, A], [D, C]]`` with ``A`` the (n-k) x (n-k) block in the top right
makes ``A`` lower triangular with the strict band on its diagonal. ``H`` is
then the middle block row of the unit-bordered triangular matrix

    T = [[I_k, 0, 0], [B, A, 0], [D, C, I_k]]

whose inverse is known in closed form, and ``H^-1`` follows from the
k x k Schur-type block ``G = C A^-1 B - D``.
"""

from dataclasses import dataclass

import numpy as np

from .core import UNDERFLOW_GUARD, as_square, block_compose, identity, mat_mul
from .elementary import invert_triangular
from .errors import HessenbergError, ShapeError, SingularMatrixError
from .oracle import oracle_inverse


@dataclass(frozen=True)
class HessenbergView:
    """A validated strict lower k-Hessenberg matrix; build with :func:`hessenberg_view`."""

    H: np.ndarray
    k: int

    @property
    def n(self):
        return self.H.shape[0]

    @property
    def m(self):
        return self.n - self.k


@dataclass(frozen=True)
class HessenbergBlocks:
    B: np.ndarray
    A: np.ndarray
    C: np.ndarray
    D: np.ndarray
    A_inv: np.ndarray
    E: np.ndarray
    F: np.ndarray
    G: np.ndarray


def hessenberg_view(H, k):
    H = as_square(H)
    n = H.shape[0]
    k = int(k)
    if not 1 <= k < n:
        raise ShapeError(f"bandwidth k={k} must satisfy 1 <= k < n={n}")
    above = np.abs(np.triu(H, k + 1)) > 0
    if above.any():
        i, j = (int(v) for v in np.argwhere(above)[0])
        raise HessenbergError(f"entry ({i}, {j}) lies above band {k}", position=(i, j))
    band = np.abs(np.diagonal(H, offset=k))
    if (band <= UNDERFLOW_GUARD).any():
        i = int(np.argmax(band <= UNDERFLOW_GUARD))
        raise HessenbergError(f"band entry ({i}, {i + k}) is zero; matrix is not strict", position=i)
    return HessenbergView(H, k)


def _schur_product(C, A_inv, B):
    return mat_mul(mat_mul(C, A_inv), B)


def block_decompose(view):
    H, k, m = view.H, view.k, view.m
    B, A = H[:m, :k].copy(), H[:m, k:].copy()
    D, C = H[m:, :k].copy(), H[m:, k:].copy()
    A_inv = invert_triangular(A)
    E = -mat_mul(A_inv, B)
    F = -mat_mul(C, A_inv)
    G = _schur_product(C, A_inv, B) - D
    return HessenbergBlocks(B, A, C, D, A_inv, E, F, G)


def embed_triangular(view, blocks=None):
    """The (n+k) x (n+k) lower triangular ``[[I, 0, 0], [B, A, 0], [D, C, I]]``."""
    b = blocks or block_decompose(view)
    k, m, dt = view.k, view.m, view.H.dtype
    Ik = identity(k, dt)
    return block_compose([
        [Ik, np.zeros((k, m), dt), np.zeros((k, k), dt)],
        [b.B, b.A, np.zeros((m, k), dt)],
        [b.D, b.C, Ik],
    ])


def embedded_inverse(view, blocks=None):
    """Closed-form inverse of :func:`embed_triangular`: ``[[I, 0, 0], [E, A^-1, 0], [G, F, I]]``."""
    b = blocks or block_decompose(view)
    k, m, dt = view.k, view.m, view.H.dtype
    Ik = identity(k, dt)
    return block_compose([
        [Ik, np.zeros((k, m), dt), np.zeros((k, k), dt)],
        [b.E, b.A_inv, np.zeros((m, k), dt)],
        [b.G, b.F, Ik],
    ])


def is_invertible_hessenberg(view, return_witness=False):
    """``H`` is invertible exactly when ``G = C A^-1 B - D`` is.

    ``G`` is tested by pivoted elimination with the oracle's relative pivot
    threshold. With ``return_witness`` the pair ``(flag, G)`` is returned.
    """
    G = block_decompose(view).G
    try:
        oracle_inverse(G)
        ok = True
    except SingularMatrixError:
        ok = False
    return (ok, G) if return_witness else ok


def invert_hessenberg(view):
    """``H^-1 = [[0, 0], [A^-1, 0]] - [[I_k], [E]] G^-1 [[F, I_k]]``.

    The first term has row blocks (k, m) and column blocks (m, k). Raises
    :class:`SingularMatrixError` carrying ``G`` as witness when ``G`` is
    singular.
    """
    b = block_decompose(view)
    k, m, dt = view.k, view.m, view.H.dtype
    try:
        G_inv = oracle_inverse(b.G)
    except SingularMatrixError as exc:
        raise SingularMatrixError(
            "Hessenberg matrix is singular: C A^-1 B - D is not invertible", index=exc.index, witness=b.G
        ) from exc
    lead = block_compose([
        [np.zeros((k, m), dt), np.zeros((k, k), dt)],
        [b.A_inv, np.zeros((m, k), dt)],
    ])
    left = np.vstack([identity(k, dt), b.E])
    right = np.hstack([b.F, identity(k, dt)])
    return lead - mat_mul(mat_mul(left, G_inv), right)


def correction_term(view):
    """The low-rank part ``[[I_k], [E]] G^-1 [[F, I_k]]`` of the inverse (rank <= k)."""
    b = block_decompose(view)
    dt = view.H.dtype
    left = np.vstack([identity(view.k, dt), b.E])
    right = np.hstack([b.F, identity(view.k, dt)])
    return mat_mul(mat_mul(left, oracle_inverse(b.G)), right)


def _with_D(view, D):
    H = view.H.copy()
    H[view.m:, :view.k] = D
    return hessenberg_view(H, view.k)


def make_invertible(view, strategy="identity"):
    """Replace block ``D`` by ``C A^-1 B - I_k`` so that ``G = I_k``."""
    if strategy != "identity":
        raise ValueError(f"unknown strategy {strategy!r}")
    b = block_decompose(view)
    return _with_D(view, _schur_product(b.C, b.A_inv, b.B) - identity(view.k, view.H.dtype))


def make_singular(view):
    """Replace block ``D`` by ``C A^-1 B`` so that ``G`` vanishes exactly."""
    b = block_decompose(view)
    return _with_D(view, _schur_product(b.C, b.A_inv, b.B))


def tridiagonal(sub, diag, sup):
    """Tridiagonal matrix as a strict 1-Hessenberg view; ``sup`` must be nonzero."""
    diag = np.asarray(diag)
    n = diag.size
    if len(sub) != n - 1 or len(sup) != n - 1:
        raise ShapeError(f"sub and sup need {n - 1} entries for a {n}x{n} matrix")
    return banded([sub], diag, [sup])


def banded(lower_bands, diag, upper_bands):
    """Banded matrix as a strict k-Hessenberg view with ``k = len(upper_bands)``.

    ``lower_bands[i]`` is the (i+1)-th subdiagonal (length n-i-1) and
    ``upper_bands[i]`` the (i+1)-th superdiagonal; the outermost upper band
    must be free of zeros.
    """
    diag = np.asarray(diag)
    n = diag.size
    if not upper_bands:
        raise ShapeError("need at least one upper band")
    vals = [np.asarray(v) for v in [diag, *lower_bands, *upper_bands]]
    dt = np.complex128 if any(np.iscomplexobj(v) for v in vals) else np.float64
    H = np.diag(diag.astype(dt))
    for off, band in [(-(i + 1), v) for i, v in enumerate(lower_bands)] + [
        (i + 1, v) for i, v in enumerate(upper_bands)
    ]:
        band = np.asarray(band, dtype=dt)
        if band.size != n - abs(off):
            raise ShapeError(f"band at offset {off} needs {n - abs(off)} entries, got {band.size}")
        H = H + np.diag(band, off)
    return hessenberg_view(H, len(upper_bands))
