# Block elementary factors of a block lower triangular matrix.
import numpy as np

import elemtri as et
from elemtri.instances import instance_rng, random_block_triangular, random_lower_triangular

np.set_printoptions(precision=3, suppress=True)

v = random_block_triangular((2, 3, 1), instance_rng(21))
factors = et.block_factorize(v)
print("E_0 E_1 E_2 == A:", np.array_equal(et.multiply_factors(factors), v.M))
Ei = et.block_elementary_inverse(factors[1], v, 1)
print("E_1 E_1^-1 == I:", et.approx_eq(factors[1] @ Ei, np.eye(6)))

X = et.invert_block_triangular(v)
print("A^-1 vs oracle:", et.core.relative_error(X, et.oracle_inverse(v.M)))

# 1x1 blocks reproduce the scalar column algorithm exactly
A = random_lower_triangular(10, instance_rng(4))
same = np.array_equal(et.invert_block_triangular(et.block_triangular_view(A, (1,) * 10)), et.invert_triangular(A))
print("scalar blocks == column path, bit for bit:", same)
