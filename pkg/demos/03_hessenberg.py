# Explicit inverses of strict k-Hessenberg and banded matrices.
import numpy as np

import elemtri as et
from elemtri.instances import instance_rng, random_hessenberg

np.set_printoptions(precision=4, suppress=True)

v = et.hessenberg_view([[1.0, 1.0], [1.0, 0.0]], k=1)
b = et.block_decompose(v)
print("B, A, D, C:", b.B.item(), b.A.item(), b.D.item(), b.C.item(), " G =", b.G.item())
print("embedded triangular matrix:\n", et.embed_triangular(v))
print("H^-1 =\n", et.invert_hessenberg(v))

# a banded matrix with two upper bands is a strict 2-Hessenberg matrix
rng = instance_rng(6)
n = 8
v = et.banded([rng.uniform(-1, 1, n - 1)], rng.uniform(2, 3, n),
              [rng.uniform(-1, 1, n - 1), rng.uniform(0.5, 2, n - 2)])
X = et.invert_hessenberg(v)
print("banded k=2: residual", np.linalg.norm(v.H @ X - np.eye(n)))
print("top-right block equals -G^-1:", et.approx_eq(X[:2, -2:], -np.linalg.inv(et.block_decompose(v).G)))

# H is invertible exactly when G is; changing D repairs a singular matrix
s = et.make_singular(random_hessenberg(10, 3, instance_rng(1)))
print("singular instance invertible?", et.is_invertible_hessenberg(s))
fixed = et.make_invertible(s)
print("after repair:", et.is_invertible_hessenberg(fixed),
      "residual", np.linalg.norm(fixed.H @ et.invert_hessenberg(fixed) - np.eye(10)))
