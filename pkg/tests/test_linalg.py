import numpy as np
import pytest

from regkit import linalg
from regkit.errors import ShapeError, SingularMatrixError


class TestMatmul:
    def test_identity(self):
        rng = np.random.default_rng(1)
        a = rng.normal(size=(3, 3))
        np.testing.assert_array_equal(linalg.matmul(np.eye(3), a), a)

    def test_hand_computed_product(self):
        result = linalg.matmul([[1, 2], [3, 4]], [[5], [6]])
        np.testing.assert_array_equal(result, [[17], [39]])

    def test_shape_mismatch_names_both_shapes(self):
        with pytest.raises(ShapeError, match=r"\(2, 3\).*\(2, 2\)"):
            linalg.matmul(np.ones((2, 3)), np.ones((2, 2)))

    def test_associativity_on_random_triples(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            a = rng.normal(size=(3, 4))
            b = rng.normal(size=(4, 2))
            c = rng.normal(size=(2, 5))
            left = linalg.matmul(linalg.matmul(a, b), c)
            right = linalg.matmul(a, linalg.matmul(b, c))
            scale = (
                linalg.frobenius_norm(a)
                * linalg.frobenius_norm(b)
                * linalg.frobenius_norm(c)
            )
            assert linalg.frobenius_norm(left - right) <= 1e-10 * scale


class TestTranspose:
    def test_involution(self):
        a = np.random.default_rng(2).normal(size=(4, 3))
        np.testing.assert_array_equal(linalg.transpose(linalg.transpose(a)), a)

    def test_row_to_column(self):
        np.testing.assert_array_equal(linalg.transpose([[1, 2, 3]]), [[1], [2], [3]])

    def test_symmetric_fixed_point(self):
        a = np.array([[2.0, 1.0], [1.0, 5.0]])
        np.testing.assert_array_equal(linalg.transpose(a), a)

    def test_product_reverses(self):
        rng = np.random.default_rng(3)
        a = rng.normal(size=(3, 4))
        b = rng.normal(size=(4, 2))
        lhs = linalg.transpose(linalg.matmul(a, b))
        rhs = linalg.matmul(linalg.transpose(b), linalg.transpose(a))
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)


class TestFrobenius:
    def test_inner_vs_norm(self):
        a = np.random.default_rng(4).normal(size=(3, 3))
        assert linalg.frobenius_inner(a, a) == pytest.approx(linalg.frobenius_norm(a) ** 2)

    def test_inner_with_zero(self):
        a = np.ones((2, 2))
        assert linalg.frobenius_inner(a, np.zeros((2, 2))) == 0.0

    def test_inner_hand_computed(self):
        assert linalg.frobenius_inner([[1, 2], [3, 4]], [[1, 0], [0, 1]]) == 5.0

    def test_inner_shape_error(self):
        with pytest.raises(ShapeError):
            linalg.frobenius_inner(np.ones((2, 2)), np.ones((2, 3)))

    def test_symmetry_and_bilinearity(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            a = rng.normal(size=(3, 4))
            b = rng.normal(size=(3, 4))
            c = rng.normal(size=(3, 4))
            alpha, beta = rng.normal(size=2)
            assert linalg.frobenius_inner(a, b) == pytest.approx(
                linalg.frobenius_inner(b, a), abs=1e-12
            )
            assert linalg.frobenius_inner(alpha * a + beta * b, c) == pytest.approx(
                alpha * linalg.frobenius_inner(a, c) + beta * linalg.frobenius_inner(b, c),
                abs=1e-12,
            )

    def test_norm_zero(self):
        assert linalg.frobenius_norm(np.zeros((3, 2))) == 0.0

    def test_norm_three_four_five(self):
        assert linalg.frobenius_norm([[3.0, 4.0]]) == 5.0

    def test_norm_homogeneity(self):
        a = np.random.default_rng(6).normal(size=(2, 5))
        assert linalg.frobenius_norm(-2.5 * a) == pytest.approx(2.5 * linalg.frobenius_norm(a))


class TestOuter:
    def test_basis_case(self):
        np.testing.assert_array_equal(linalg.outer([1, 0], [0, 1]), [[0, 1], [0, 0]])

    def test_rank_at_most_one(self):
        result = linalg.outer([1.0, 2.0, 3.0], [4.0, 5.0])
        for i in range(2):
            for j in range(i + 1, 3):
                for a in range(2):
                    minor = result[i, a] * result[j, 1 - a] - result[i, 1 - a] * result[j, a]
                    assert abs(minor) <= 1e-12

    def test_hand_computed(self):
        np.testing.assert_array_equal(linalg.outer([1, 2], [3, 4]), [[3, 4], [6, 8]])

    def test_contraction_with_vector(self):
        # outer(u, v) @ w == (v . w) u
        rng = np.random.default_rng(8)
        for _ in range(10):
            u = rng.normal(size=(3, 1))
            v = rng.normal(size=(4, 1))
            w = rng.normal(size=(4, 1))
            lhs = linalg.matmul(linalg.outer(u, v), w)
            rhs = float(v.ravel() @ w.ravel()) * u
            np.testing.assert_allclose(lhs, rhs, atol=1e-12)


class TestDeterminant:
    def test_identity(self):
        for n in (1, 2, 5):
            assert linalg.determinant(np.eye(n)) == 1.0

    def test_two_by_two(self):
        assert linalg.determinant([[1, 1], [1, 2]]) == pytest.approx(1.0)

    def test_repeated_row_is_singular(self):
        assert linalg.determinant([[1.0, 2.0], [1.0, 2.0]]) == 0.0

    def test_non_square_rejected(self):
        with pytest.raises(ShapeError):
            linalg.determinant(np.ones((2, 3)))

    def test_matches_permutation_sign(self):
        # A pure row swap of the identity must flip the sign.
        assert linalg.determinant([[0.0, 1.0], [1.0, 0.0]]) == -1.0


class TestInverse:
    def test_identity(self):
        np.testing.assert_array_equal(linalg.inverse(np.eye(3)), np.eye(3))

    def test_two_by_two_adjugate(self):
        np.testing.assert_allclose(
            linalg.inverse([[1, 1], [1, 2]]), [[2, -1], [-1, 1]], atol=1e-14
        )

    def test_zero_matrix_rejected(self):
        with pytest.raises(SingularMatrixError):
            linalg.inverse(np.zeros((2, 2)))

    def test_non_square_rejected(self):
        with pytest.raises(ShapeError):
            linalg.inverse(np.ones((3, 2)))

    def test_round_trip_on_well_conditioned(self):
        rng = np.random.default_rng(9)
        checked = 0
        while checked < 20:
            a = rng.normal(size=(5, 5))
            if np.linalg.cond(a) >= 1e6:
                continue
            checked += 1
            residual = linalg.matmul(a, linalg.inverse(a)) - np.eye(5)
            assert linalg.frobenius_norm(residual) <= 1e-8


class TestAsMatrix:
    def test_ragged_rejected(self):
        with pytest.raises(ShapeError):
            linalg.as_matrix([[1, 2], [3]])

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            linalg.as_matrix([[1.0, np.nan]])

    def test_vector_shape(self):
        assert linalg.as_vector([1.0, 2.0, 3.0]).shape == (3, 1)
