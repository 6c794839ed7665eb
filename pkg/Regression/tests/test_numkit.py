import numpy as np
from django.test import SimpleTestCase

from Regression.exceptions import DimensionError, SingularMatrix
from Regression.numkit import SymMatrix, eig_extremes, eig_min_vector, is_positive_definite, solve_sym


class SolveSymTestCase(SimpleTestCase):
    def test_identity(self):
        np.testing.assert_allclose(solve_sym(np.eye(2), [3.0, -1.0]), [3.0, -1.0], atol=1e-12)

    def test_diagonal(self):
        np.testing.assert_allclose(solve_sym(np.diag([2.0, 4.0]), [2.0, 4.0]), [1.0, 1.0], atol=1e-12)

    def test_coupled(self):
        x = solve_sym(SymMatrix(np.array([[2.0, 1.0], [1.0, 2.0]])), [3.0, 3.0])
        np.testing.assert_allclose(x, [1.0, 1.0], atol=1e-12)

    def test_singular_matrix(self):
        with self.assertRaises(SingularMatrix):
            solve_sym(np.array([[1.0, 1.0], [1.0, 1.0]]), [1.0, 2.0])

    def test_indefinite_matrix(self):
        with self.assertRaises(SingularMatrix):
            solve_sym(np.diag([1.0, -1.0]), [1.0, 1.0])

    def test_rhs_length_mismatch(self):
        with self.assertRaises(DimensionError):
            solve_sym(np.eye(3), [1.0, 2.0])

    def test_random_spd_residual(self):
        rng = np.random.default_rng(2)
        for n in range(1, 11):
            for _ in range(5):
                M = rng.standard_normal((n + 2, n))
                A = M.T @ M
                A = (A + A.T) / 2 + 1e-3 * np.eye(n)
                b = rng.standard_normal(n)
                x = solve_sym(A, b)
                tolerance = 1e-10 * (np.linalg.norm(A, 2) * np.linalg.norm(x) + np.linalg.norm(b))
                self.assertLessEqual(np.linalg.norm(A @ x - b), tolerance)


class EigenTestCase(SimpleTestCase):
    def test_identity(self):
        lam_min, lam_max = eig_extremes(np.eye(3))
        self.assertAlmostEqual(lam_min, 1.0, places=12)
        self.assertAlmostEqual(lam_max, 1.0, places=12)

    def test_diagonal(self):
        lam_min, lam_max = eig_extremes(np.diag([0.5, 2.0]))
        self.assertAlmostEqual(lam_min, 0.5, places=12)
        self.assertAlmostEqual(lam_max, 2.0, places=12)

    def test_coupled(self):
        lam_min, lam_max = eig_extremes(np.array([[2.0, 1.0], [1.0, 2.0]]))
        self.assertAlmostEqual(lam_min, 1.0, places=12)
        self.assertAlmostEqual(lam_max, 3.0, places=12)

    def test_rayleigh_quotient_sandwich(self):
        rng = np.random.default_rng(3)
        B = rng.standard_normal((5, 5))
        A = (B + B.T) / 2
        lam_min, lam_max = eig_extremes(A)
        slack = 1e-10 * max(abs(lam_min), abs(lam_max))
        eta = rng.standard_normal((1000, 5))
        quotients = np.einsum("ki,ij,kj->k", eta, A, eta) / np.einsum("ki,ki->k", eta, eta)
        self.assertTrue(np.all(quotients >= lam_min - slack))
        self.assertTrue(np.all(quotients <= lam_max + slack))

    def test_trace_between_extremes(self):
        rng = np.random.default_rng(6)
        for n in range(1, 8):
            B = rng.standard_normal((n, n))
            A = (B @ B.T + (B @ B.T).T) / 2
            lam_min, lam_max = eig_extremes(A)
            slack = 1e-10 * n * abs(lam_max)
            self.assertGreaterEqual(np.trace(A), n * lam_min - slack)
            self.assertLessEqual(np.trace(A), n * lam_max + slack)

    def test_min_vector_is_unit_eigenvector(self):
        rng = np.random.default_rng(5)
        B = rng.standard_normal((4, 4))
        A = SymMatrix.from_array(B @ B.T)
        lam, v = eig_min_vector(A)
        self.assertAlmostEqual(np.linalg.norm(v), 1.0, places=12)
        np.testing.assert_allclose(A.entries @ v, lam * v, atol=1e-10)

    def test_positive_definite(self):
        self.assertTrue(is_positive_definite(np.eye(2)))
        self.assertFalse(is_positive_definite(np.zeros((2, 2))))


class SymMatrixTestCase(SimpleTestCase):
    def test_rejects_asymmetric(self):
        with self.assertRaises(DimensionError):
            SymMatrix(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_rejects_non_square(self):
        with self.assertRaises(DimensionError):
            SymMatrix(np.ones((2, 3)))

    def test_weighted_gram(self):
        X = np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 1.0]])
        w = np.array([1.0, 0.5, 2.0])
        expected = X @ np.diag(w) @ X.T
        np.testing.assert_allclose(SymMatrix.gram(X, w).entries, expected, atol=1e-14)
        self.assertEqual(SymMatrix.gram(X).dim, 2)
