# Elementary factors of a lower triangular matrix and the inverses built from them.
import numpy as np

import elemtri as et
from elemtri.instances import instance_rng, random_lower_triangular

np.set_printoptions(precision=4, suppress=True)

A = np.array([[2.0, 0.0, 0.0],
              [1.0, 3.0, 0.0],
              [4.0, -1.0, 0.5]])

# the column factors just put each column of A into an identity matrix
E = et.factorize_columns(A)
for f in E:
    print(f"E_{f.index} =\n{f.dense()}")
print("E_0 E_1 E_2 == A:", np.array_equal(et.multiply_factors(E), A))

# each factor inverts in closed form and stays elementary
print("inverse of E_1:\n", et.elementary_inverse(E[1]).dense())

# A^-1 is built column by column, last column first
for step, X in enumerate(et.incremental_inverses(A)):
    print(f"after {step + 1} factor(s):\n{X}")
print("matches the pivoted-elimination oracle:",
      et.approx_eq(et.invert_triangular(A), et.oracle_inverse(A), 1e-12))

# row factors give the same matrix, and their partial products invert the
# leading sections of the row companion matrix
B = et.companion_matrix(A, "row")
for k, P in enumerate(et.section_inverses(A), start=1):
    print(f"section {k}: P_k B_k == I ->", et.approx_eq(P @ B[:k, :k], np.eye(k), 1e-12))

# columns are independent, so they can be computed concurrently
A = random_lower_triangular(64, instance_rng(3))
print("parallel == sequential, bit for bit:",
      np.array_equal(et.invert_columns_parallel(A, workers=8), et.invert_triangular(A)))
