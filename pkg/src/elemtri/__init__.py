"""Elementary triangular matrices: factorization, inversion and powers of
triangular matrices, and explicit inverses of strict k-Hessenberg, banded
and block triangular matrices.
"""

from .block import (
    BlockPartition,
    BlockTriangularView,
    block_elementary_inverse,
    block_factorize,
    block_triangular_view,
    invert_block_triangular,
)
from .core import (
    BlockSpec,
    approx_eq,
    as_matrix,
    block_compose,
    block_extract,
    frobenius_norm,
    identity,
    is_identity,
    is_k_hessenberg,
    is_lower_triangular,
    mat_mul,
    shift_matrix,
)
from .elementary import (
    ChainTerm,
    ElementaryFactor,
    chain_product,
    column_part,
    companion_matrix,
    elementary_inverse,
    elementary_power,
    factorize_columns,
    factorize_rows,
    incremental_inverses,
    invert_columns_parallel,
    invert_triangular,
    invert_triangular_rows,
    multiply_factors,
    product_of_factors_descending,
    section_inverses,
)
from .errors import (
    HessenbergError,
    NotTriangularError,
    ScalarMismatchError,
    ShapeError,
    SingularMatrixError,
    SizeGuardError,
)
from .hessenberg import (
    HessenbergBlocks,
    HessenbergView,
    banded,
    block_decompose,
    embed_triangular,
    embedded_inverse,
    hessenberg_view,
    invert_hessenberg,
    is_invertible_hessenberg,
    make_invertible,
    make_singular,
    tridiagonal,
)
from .oracle import oracle_divided_difference, oracle_inverse, oracle_power
from .powers import complete_homogeneous, g_coefficient, matrix_power, square_closed_form

__version__ = "0.1.0"
