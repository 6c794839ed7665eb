"""
Dense symmetric linear algebra for the small systems (n <= ~20) met in the
regression problems: SPD solves for the normal equations and extreme
eigenvalues of Gram matrices.
"""
from dataclasses import dataclass

import numpy as np
import scipy.linalg as scilin

from Regression.exceptions import DimensionError, SingularMatrix


@dataclass(frozen=True)
class SymMatrix:
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=np.float64)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] < 1:
            raise DimensionError(f"SymMatrix needs a non-empty square array, got shape {entries.shape}.")
        if not np.array_equal(entries, entries.T):
            raise DimensionError("SymMatrix entries are not symmetric.")
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self):
        return self.entries.shape[0]

    @classmethod
    def from_array(cls, A):
        """Symmetrize (A + A')/2 so rounding in a Gram product cannot break symmetry."""
        A = np.asarray(A, dtype=np.float64)
        return cls(0.5 * (A + A.T))

    @classmethod
    def gram(cls, X, w=None):
        """X diag(w) X' for a column-sample matrix X."""
        X = np.asarray(X, dtype=np.float64)
        if w is None:
            return cls.from_array(X @ X.T)
        return cls.from_array((X * np.asarray(w, dtype=np.float64)) @ X.T)


def _entries(A):
    if isinstance(A, SymMatrix):
        return A.entries
    return SymMatrix.from_array(A).entries


def eig_extremes(A):
    """Smallest and largest eigenvalue of a symmetric matrix."""
    values = scilin.eigh(_entries(A), eigvals_only=True)
    return float(values[0]), float(values[-1])


def eig_min_vector(A):
    """Eigenpair (lambda_min, unit eigenvector) of a symmetric matrix."""
    values, vectors = scilin.eigh(_entries(A))
    return float(values[0]), vectors[:, 0]


def is_positive_definite(A):
    lam_min, lam_max = eig_extremes(A)
    n = _entries(A).shape[0]
    return lam_max > 0 and lam_min > n * np.finfo(np.float64).eps * lam_max


def solve_sym(A, b):
    """
    Solve A x = b for symmetric positive definite A by Cholesky.

    Raises SingularMatrix when A fails the definiteness check
    lambda_min > n * eps * lambda_max or the factorization hits a
    non-positive pivot.
    """
    entries = _entries(A)
    b = np.asarray(b, dtype=np.float64)
    if b.shape[0] != entries.shape[0]:
        raise DimensionError("Right-hand side length does not match the matrix dimension.")
    if not is_positive_definite(entries):
        raise SingularMatrix("Matrix is not numerically positive definite.")
    try:
        factor = scilin.cho_factor(entries, lower=True, check_finite=True)
    except scilin.LinAlgError as exc:
        raise SingularMatrix(str(exc)) from exc
    return scilin.cho_solve(factor, b)
