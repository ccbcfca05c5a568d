"""Seeded random instances for tests, benchmarks and ``elemtri gen``.

All randomness comes from numpy's PCG64 generator. ``instance_rng(seed, i)``
derives an independent stream per instance index so families of instances
are reproducible regardless of how many are drawn.
"""

import numpy as np

from .block import block_triangular_view
from .hessenberg import hessenberg_view, make_invertible, tridiagonal


def instance_rng(seed, index=0):
    return np.random.default_rng([int(seed), int(index)])


def _signed(rng, low, high, size):
    return rng.uniform(low, high, size) * rng.choice([-1.0, 1.0], size)


def random_lower_triangular(n, rng, diag=(0.5, 2.0), zero_fraction=0.0, diagonal_values=None, offdiag_scale=1.0):
    """Strictly-lower entries uniform in [-1, 1]; diagonal magnitudes uniform in ``diag``.

    The condition number of such matrices grows exponentially with ``n``;
    ``offdiag_scale = 1 / n`` keeps large instances well conditioned.

    ``zero_fraction`` zeroes that share of the subdiagonal entries at random.
    ``diagonal_values`` overrides the diagonal (e.g. all ones, or repeats).
    """
    A = np.tril(rng.uniform(-1.0, 1.0, (n, n)), -1) * offdiag_scale
    if zero_fraction > 0:
        A[rng.random((n, n)) < zero_fraction] = 0.0
    if diagonal_values is None:
        d = _signed(rng, diag[0], diag[1], n)
    else:
        d = np.broadcast_to(np.asarray(diagonal_values, dtype=float), (n,))
    A[np.diag_indices(n)] = d
    return A


def random_hessenberg(n, k, rng):
    """Strict lower k-Hessenberg view, band entries in [0.5, 2] in magnitude, repaired so ``G = I``."""
    H = np.tril(rng.uniform(-1.0, 1.0, (n, n)), k)
    idx = np.arange(n - k)
    H[idx, idx + k] = _signed(rng, 0.5, 2.0, n - k)
    return make_invertible(hessenberg_view(H, k))


def random_tridiagonal(n, rng):
    """Tridiagonal view: sub and main diagonal uniform in [-1, 1], superdiagonal in [0.5, 2] in magnitude.

    No repair is applied (it would fill the corner entry), so invertibility
    is generic rather than guaranteed. The explicit inverse loses accuracy
    as n grows: the triangular block has the superdiagonal on its diagonal
    and the main diagonal below it, and its inverse grows geometrically.
    """
    sub = rng.uniform(-1.0, 1.0, n - 1)
    diag = rng.uniform(-1.0, 1.0, n)
    sup = _signed(rng, 0.5, 2.0, n - 1)
    return tridiagonal(sub, diag, sup)


def random_partition(n, rng, max_block=4):
    sizes = []
    left = n
    while left:
        s = int(rng.integers(1, min(max_block, left) + 1))
        sizes.append(s)
        left -= s
    return tuple(sizes)


def default_partition(n, block=2):
    return tuple([block] * (n // block) + ([n % block] if n % block else []))


def random_block_triangular(sizes, rng):
    """Block lower triangular view with diagonally dominant diagonal blocks."""
    n = sum(sizes)
    M = rng.uniform(-1.0, 1.0, (n, n))
    start = 0
    for s in sizes:
        stop = start + s
        M[start:stop, stop:] = 0.0
        idx = np.arange(start, stop)
        # |x_ii| > s - 1 >= off-diagonal row sum inside the block
        M[idx, idx] = _signed(rng, s - 0.5, s + 1.0, s)
        start = stop
    return block_triangular_view(M, sizes)
