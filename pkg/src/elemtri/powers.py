"""Closed-form powers of lower triangular matrices.

``A^m`` is expanded over chain products ``G(J)`` weighted by divided
differences of ``t^(m)`` shifted by ``|J|``. The divided difference of a
monomial over nodes ``(1, x_{k1}, ..., x_{kr})`` equals a complete homogeneous
symmetric polynomial of those nodes, which stays well defined when nodes
repeat.
"""

import numpy as np

from .core import identity
from .elementary import _validate_indices, check_lower_triangular, iter_chains
from .errors import SizeGuardError

MAX_POWER_N = 14


def complete_homogeneous(d, nodes):
    """h_d(nodes): sum of all degree-``d`` monomials in the node values.

    Uses ``h_d(x_1..x_p) = h_d(x_1..x_{p-1}) + x_p h_{d-1}(x_1..x_p)``.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    nodes = list(nodes)
    if not nodes:
        raise ValueError("need at least one node")
    h = [1] + [0] * d
    for x in nodes:
        for i in range(1, d + 1):
            h[i] = h[i] + x * h[i - 1]
    return h[d]


def divided_difference_nodes(A, K):
    """``(1, x_{k1}, ..., x_{kr})`` with ``K`` sorted descending and ``x`` the diagonal of ``A``."""
    diag = np.diag(A)
    return [diag.dtype.type(1)] + [diag[k] for k in sorted(K, reverse=True)]


def g_coefficient(A, K, m):
    """Divided difference of ``t^(m+|K|)`` at ``(1, x_k for k in K)``.

    Symmetric in the selected diagonal entries, and equal to 1 when ``m = 0``.
    """
    A = np.asarray(A)
    K = _validate_indices(K, A.shape[0])
    return complete_homogeneous(m, divided_difference_nodes(A, K))


def matrix_power(A, m, max_n=MAX_POWER_N):
    """``A^m`` as ``I + sum_J g(J, m - |J|) G(J)`` over nonempty ``J`` with ``|J| <= min(m, n)``.

    Subset enumeration is exponential in ``n``; matrices larger than
    ``max_n`` are refused with :class:`SizeGuardError`.
    """
    A = check_lower_triangular(A)
    if m < 0:
        raise ValueError("power must be non-negative")
    n = A.shape[0]
    if n > max_n:
        raise SizeGuardError(
            f"n={n} exceeds the closed-form guard of {max_n}; use repeated multiplication"
        )
    out = identity(n, A.dtype)
    diag = np.diag(A)
    one = diag.dtype.type(1)
    for J, term in iter_chains(A, range(n), max_len=min(m, n)):
        g = complete_homogeneous(m - len(J), [one] + [diag[k] for k in J])
        out[:, term.target_column] += (g * term.coefficient) * term.column_values
    return out


def square_closed_form(A):
    """``A^2 = I + sum_k (1 + x_k) C_k + sum_{j<k} a[k,j] C_k L^(k-j)`` with O(n^2) column updates."""
    A = check_lower_triangular(A)
    n = A.shape[0]
    out = identity(n, A.dtype)
    for k in range(n):
        col = np.zeros(n, dtype=A.dtype)
        col[k:] = A[k:, k]
        col[k] -= 1
        out[:, k] += (1 + A[k, k]) * col
        for j in range(k):
            # C_k L^(k-j) carries column k of C_k into column j
            out[:, j] += A[k, j] * col
    return out
