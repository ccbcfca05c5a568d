from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elemtri.core import approx_eq, mat_mul, shift_matrix
from elemtri.elementary import (
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
from elemtri.errors import NotTriangularError, SingularMatrixError
from elemtri.instances import instance_rng, random_lower_triangular
from elemtri.oracle import oracle_inverse, oracle_power


def C(A, k):
    return column_part(A, k).dense()


class TestColumnParts:
    def test_identity_has_no_parts(self):
        assert all(not C(np.eye(3), k).any() for k in range(3))

    def test_two_by_two(self, A2):
        assert np.array_equal(C(A2, 0), [[0.0, 0.0], [2.0, 0.0]])
        assert np.array_equal(C(A2, 1), [[0.0, 0.0], [0.0, 2.0]])

    def test_additive_decomposition_exact(self, lower8):
        total = sum(C(lower8, k) for k in range(8))
        assert np.array_equal(total, lower8 - np.eye(8))

    def test_errors(self, A2):
        with pytest.raises(IndexError):
            column_part(A2, 2)
        with pytest.raises(NotTriangularError):
            column_part(A2.T, 0)


class TestFactorization:
    def test_identity(self):
        assert all(np.array_equal(f.dense(), np.eye(3)) for f in factorize_columns(np.eye(3)))
        assert all(np.array_equal(f.dense(), np.eye(3)) for f in factorize_rows(np.eye(3)))

    def test_two_by_two_columns(self, A2):
        E = factorize_columns(A2)
        assert np.array_equal(E[0].dense(), [[1.0, 0.0], [2.0, 1.0]])
        assert np.array_equal(E[1].dense(), [[1.0, 0.0], [0.0, 3.0]])
        assert np.array_equal(mat_mul(E[0].dense(), E[1].dense()), A2)

    def test_two_by_two_rows(self, A2):
        F = factorize_rows(A2)
        assert np.array_equal(F[0].dense(), np.eye(2))
        assert np.array_equal(F[1].dense(), A2)

    def test_random_bit_exact(self, lower8):
        assert np.array_equal(multiply_factors(factorize_columns(lower8)), lower8)
        assert np.array_equal(multiply_factors(factorize_rows(lower8)), lower8)

    def test_rejects_upper(self):
        with pytest.raises(NotTriangularError) as info:
            factorize_columns(np.triu(np.ones((3, 3))))
        assert info.value.position == (0, 1)


class TestElementaryInverse:
    def test_identity_factor(self):
        E = ElementaryFactor(3, 1, "column", np.array([1.0, 0.0]))
        assert np.array_equal(elementary_inverse(E).dense(), np.eye(3))

    def test_examples(self, A2):
        E0, E1 = factorize_columns(A2)
        assert np.array_equal(elementary_inverse(E0).dense(), [[1.0, 0.0], [-2.0, 1.0]])
        assert np.allclose(elementary_inverse(E1).dense(), [[1.0, 0.0], [0.0, 1 / 3]], rtol=1e-15, atol=0)

    def test_is_elementary_and_inverts(self, lower8):
        for E in factorize_columns(lower8) + factorize_rows(lower8):
            Ei = elementary_inverse(E)
            assert (Ei.index, Ei.orientation) == (E.index, E.orientation)
            assert approx_eq(mat_mul(E.dense(), Ei.dense()), np.eye(8), 1e-15)

    def test_singular_reports_index(self):
        A = np.tril(np.ones((3, 3)))
        A[1, 1] = 0.0
        with pytest.raises(SingularMatrixError) as info:
            elementary_inverse(factorize_columns(A)[1])
        assert info.value.index == 1


class TestInversion:
    def test_identity(self):
        for inv in (invert_triangular, invert_columns_parallel, invert_triangular_rows):
            assert np.array_equal(inv(np.eye(5)), np.eye(5))

    def test_two_by_two(self, A2):
        expected = np.array([[1.0, 0.0], [-2 / 3, 1 / 3]])
        for inv in (invert_triangular, invert_columns_parallel, invert_triangular_rows):
            assert np.allclose(inv(A2), expected, rtol=0, atol=1e-15)
        assert np.array_equal(invert_triangular(A2), invert_columns_parallel(A2))

    def test_random_matches_oracle(self):
        A = random_lower_triangular(20, instance_rng(7))
        X = invert_triangular(A)
        assert approx_eq(X, oracle_inverse(A), 1e-9)
        assert approx_eq(invert_triangular_rows(A), oracle_inverse(A), 1e-9)

    def test_parallel_worker_counts_bit_identical(self):
        A = random_lower_triangular(64, instance_rng(3))
        ref = invert_triangular(A)
        for w in (1, 8):
            assert np.array_equal(invert_columns_parallel(A, workers=w), ref)

    def test_complex(self):
        rng = instance_rng(4)
        A = np.tril(rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
        A[np.diag_indices(6)] += 2
        assert approx_eq(mat_mul(A, invert_triangular(A)), np.eye(6, dtype=complex), 1e-12)

    def test_singular_diagonal(self):
        A = random_lower_triangular(5, instance_rng(1))
        A[3, 3] = 0.0
        for inv in (invert_triangular, invert_columns_parallel, invert_triangular_rows):
            with pytest.raises(SingularMatrixError) as info:
                inv(A)
            assert info.value.index == 3

    def test_column_finality(self, lower8):
        steps = list(incremental_inverses(lower8))
        inv_factors = [elementary_inverse(E).dense() for E in factorize_columns(lower8)]
        for k, X in zip(range(7, -1, -1), steps):
            assert approx_eq(X, multiply_factors(inv_factors[k:][::-1]), 1e-12)
        for prev, cur, k in zip(steps, steps[1:], range(6, -1, -1)):
            assert np.array_equal(prev[:, k + 1:], cur[:, k + 1:])
            assert np.array_equal(cur[:, :k], np.eye(8)[:, :k])
        assert np.array_equal(steps[-1], invert_triangular(lower8))


class TestCompanion:
    def test_identity(self):
        assert np.array_equal(companion_matrix(np.eye(3)), np.eye(3))

    def test_two_by_two(self, A2):
        Bc = companion_matrix(A2, "column")
        Br = companion_matrix(A2, "row")
        assert np.allclose(Bc, [[1.0, 0.0], [-2.0, 1 / 3]], rtol=0, atol=1e-15)
        assert np.allclose(Br, [[1.0, 0.0], [-2 / 3, 1 / 3]], rtol=0, atol=1e-15)
        E = factorize_columns(A2)
        F = factorize_rows(A2)
        assert approx_eq(mat_mul(multiply_factors([E[1], E[0]]), Bc), np.eye(2), 1e-15)
        assert approx_eq(mat_mul(multiply_factors([F[1], F[0]]), Br), np.eye(2), 1e-15)

    @pytest.mark.parametrize("orientation, factorize", [("column", factorize_columns), ("row", factorize_rows)])
    def test_factors_invert_companion(self, lower8, orientation, factorize):
        B = companion_matrix(lower8, orientation)
        inv_factors = [elementary_inverse(f).dense() for f in factorize(lower8)]
        assert approx_eq(multiply_factors(factorize(B)), multiply_factors(inv_factors), 1e-15)
        assert approx_eq(mat_mul(multiply_factors(factorize(lower8)[::-1]), B), np.eye(8), 1e-12)


class TestChainProduct:
    def test_singleton(self, A2):
        assert np.array_equal(chain_product(A2, [1]).dense(), [[0.0, 0.0], [0.0, 2.0]])

    def test_pair(self, A2):
        G = chain_product(A2, {1, 0})
        assert G.coefficient == 2.0 and G.target_column == 0
        assert np.array_equal(G.dense(), [[0.0, 0.0], [4.0, 0.0]])
        assert np.array_equal(G.dense(), mat_mul(C(A2, 1), C(A2, 0)))

    def test_zero_link(self, lower8):
        A = lower8.copy()
        A[5, 2] = 0.0
        G = chain_product(A, [6, 5, 2])
        assert G.coefficient == 0 and not G.dense().any()

    def test_nonzeros_in_target_column(self, lower8):
        G = chain_product(lower8, [7, 4, 1]).dense()
        assert not np.delete(G, 1, axis=1).any()

    def test_rejects_bad_sets(self, A2):
        with pytest.raises(ValueError):
            chain_product(A2, [])
        with pytest.raises(IndexError):
            chain_product(A2, [2])

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_explicit_products(self, seed):
        A = random_lower_triangular(8, instance_rng(seed, 100))
        for r in (2, 3, 4):
            for K in combinations(range(7, -1, -1), r):
                explicit = multiply_factors([C(A, k) for k in K])
                assert approx_eq(chain_product(A, K).dense(), explicit, 1e-12)


class TestProducts:
    def test_singleton(self, A2):
        assert np.array_equal(product_of_factors_descending(A2, [1]), factorize_columns(A2)[1].dense())

    def test_two_by_two(self, A2):
        got = product_of_factors_descending(A2, [1, 0])
        assert np.array_equal(got, [[1.0, 0.0], [6.0, 3.0]])
        E = factorize_columns(A2)
        assert np.array_equal(mat_mul(E[1].dense(), E[0].dense()), [[1.0, 0.0], [6.0, 3.0]])

    def test_full_descending_product(self):
        A = random_lower_triangular(6, instance_rng(11))
        E = factorize_columns(A)
        assert approx_eq(product_of_factors_descending(A, range(5, -1, -1)), multiply_factors(E[::-1]), 1e-12)

    def test_partial_descending_product(self, lower8):
        E = factorize_columns(lower8)
        K = [7, 5, 4, 1]
        assert approx_eq(product_of_factors_descending(lower8, K), multiply_factors([E[k] for k in K]), 1e-12)

    def test_rejects_non_descending(self, A2):
        with pytest.raises(ValueError):
            product_of_factors_descending(A2, [0, 1])

    def test_sparse_pruning_still_exact(self):
        A = random_lower_triangular(10, instance_rng(12), zero_fraction=0.6)
        E = factorize_columns(A)
        assert approx_eq(product_of_factors_descending(A, range(9, -1, -1)), multiply_factors(E[::-1]), 1e-12)


class TestElementaryPower:
    def test_zero(self, A2):
        assert np.array_equal(elementary_power(factorize_columns(A2)[0], 0), np.eye(2))

    def test_examples(self, A2):
        E0, E1 = factorize_columns(A2)
        assert np.array_equal(elementary_power(E0, 3), [[1.0, 0.0], [6.0, 1.0]])
        assert np.array_equal(elementary_power(E1, 2), [[1.0, 0.0], [0.0, 9.0]])
        assert np.array_equal(oracle_power(E0.dense(), 3), [[1.0, 0.0], [6.0, 1.0]])

    @pytest.mark.parametrize("m", range(7))
    def test_matches_repeated_product(self, lower8, m):
        for E in factorize_columns(lower8):
            assert approx_eq(elementary_power(E, m), oracle_power(E.dense(), m), 1e-12)


class TestSectionInverses:
    def test_first_section(self, A2):
        assert np.array_equal(next(section_inverses(A2)), [[1.0]])

    def test_two_by_two(self, A2):
        P1, P2 = section_inverses(A2)
        assert np.array_equal(P2, A2)
        B = companion_matrix(A2, "row")
        assert approx_eq(mat_mul(P2, B), np.eye(2), 1e-15)

    def test_random_sections(self):
        A = random_lower_triangular(10, instance_rng(5))
        B = companion_matrix(A, "row")
        prev = None
        for k, P in enumerate(section_inverses(A), start=1):
            assert approx_eq(mat_mul(P, B[:k, :k]), np.eye(k), 1e-10)
            assert approx_eq(P, oracle_inverse(B[:k, :k]), 1e-10)
            if prev is not None:
                assert np.array_equal(P[:-1, :-1], prev) and not P[:-1, -1].any()
            prev = P

    def test_zero_diagonal(self):
        A = np.tril(np.ones((3, 3)))
        A[2, 2] = 0.0
        with pytest.raises(SingularMatrixError):
            list(section_inverses(A))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), zero_fraction=st.sampled_from([0.0, 0.3]), unit=st.booleans())
def test_multiplication_rules(seed, zero_fraction, unit):
    n = 8
    rng = instance_rng(seed)
    A = random_lower_triangular(n, rng, zero_fraction=zero_fraction, diagonal_values=1.0 if unit else None)
    parts = [C(A, k) for k in range(n)]
    L = shift_matrix(n)
    for j in range(n):
        for k in range(j + 1, n):
            assert not mat_mul(parts[j], parts[k]).any()
            shifted = mat_mul(parts[k], np.linalg.matrix_power(L, k - j))
            assert np.array_equal(mat_mul(parts[k], parts[j]), A[k, j] * shifted)
    for k in range(n):
        x = A[k, k]
        for m in range(1, 5):
            assert approx_eq(multiply_factors([parts[k]] * m), (x - 1) ** (m - 1) * parts[k], 1e-12)
