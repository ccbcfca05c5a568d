# Powers of a triangular matrix from its column parts and divided differences.
import numpy as np

import elemtri as et
from elemtri.instances import instance_rng, random_lower_triangular

np.set_printoptions(precision=4, suppress=True)

A = np.array([[2.0, 0.0], [1.0, 3.0]])
print("A^2 =\n", et.matrix_power(A, 2))
print("square formula:\n", et.square_closed_form(A))

# the weights are complete homogeneous polynomials of (1, x_k, ...) and
# agree with the classical divided-difference table when the nodes differ
print("g({0,1}, 1) =", et.g_coefficient(A, [0, 1], 1))
print("table value  =", et.oracle_divided_difference([1.0, 3.0, 2.0], 3))

# repeated diagonal entries need no special treatment
A = random_lower_triangular(8, instance_rng(8), diagonal_values=1.0)
for m in range(1, 7):
    err = et.core.relative_error(et.matrix_power(A, m), et.oracle_power(A, m))
    print(f"m={m}: closed form vs repeated product, rel err {err:.1e}")

# chain products G(K) carry one column of C_k1 into column k_r
G = et.chain_product(A, [5, 3, 1])
print("G({5,3,1}) nonzero column:", G.target_column, "coefficient", round(G.coefficient, 4))
