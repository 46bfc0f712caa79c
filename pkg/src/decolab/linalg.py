"""Dense complex matrix kernels for 2-, 4- and 8-dimensional quantum objects.

Everything here is sized for the three-qubit problem: matrices are tiny,
so the Hermitian eigensolver is a cyclic Jacobi iteration (robust and
accurate at these dimensions) rather than a general-purpose LAPACK call.
All functions are pure; inputs are never mutated.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import backend

HERMITIAN_TOL = 1e-10  # Frobenius deviation allowed between m and its adjoint
PSD_TOL = 1e-10        # eigenvalues in [-PSD_TOL, 0) count as roundoff zeros


class NotHermitianError(ValueError):
    """Input matrix is not Hermitian to within HERMITIAN_TOL."""


class NotPSDError(ValueError):
    """Input matrix has an eigenvalue below -PSD_TOL."""


class NoConvergenceError(RuntimeError):
    """The Jacobi iteration hit its sweep cap before converging."""


class EigenDecomposition(NamedTuple):
    """Eigenvalues in descending order and matching orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m) -> np.ndarray:
    """Coerce to a square, finite complex128 array."""
    a = np.ascontiguousarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.isfinite(a.view(np.float64)).all():
        raise ValueError("matrix has non-finite entries")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product of two square complex matrices."""
    return np.kron(as_matrix(a), as_matrix(b))


def hermitian_eigen(m, max_sweeps: int = 60) -> EigenDecomposition:
    """Full eigendecomposition of a Hermitian matrix.

    Eigenvalues are sorted descending, ties broken by original position.
    Raises NotHermitianError for non-Hermitian input and NoConvergenceError
    (reporting the sweep count) if the rotation sweeps do not converge.
    """
    a = as_matrix(m)
    if np.linalg.norm(a - a.conj().T) > HERMITIAN_TOL:
        raise NotHermitianError(
            "matrix deviates from its adjoint by more than "
            f"{HERMITIAN_TOL:g} in Frobenius norm"
        )
    a = (a + a.conj().T) / 2.0
    w, v, sweeps, converged = backend.eigh_jacobi(a, max_sweeps)
    if not converged:
        raise NoConvergenceError(
            f"Jacobi iteration did not converge within {sweeps} sweeps"
        )
    order = np.argsort(-w, kind="stable")
    return EigenDecomposition(w[order], np.ascontiguousarray(v[:, order]))


def psd_sqrt(m) -> np.ndarray:
    """Hermitian square root of a positive-semidefinite matrix.

    Eigenvalues in [-PSD_TOL, 0) are clamped to zero; anything lower
    raises NotPSDError.
    """
    w, v = hermitian_eigen(m)
    if w[-1] < -PSD_TOL:
        raise NotPSDError(f"matrix has eigenvalue {w[-1]:.3e} < -{PSD_TOL:g}")
    w = np.where(w < 0.0, 0.0, w)
    r = (v * np.sqrt(w)) @ v.conj().T
    return (r + r.conj().T) / 2.0


def numerical_rank(m, tol: float | None = None) -> int:
    """Number of eigenvalues of a Hermitian matrix above the noise floor.

    By default the threshold is 1e-10 times the largest eigenvalue
    magnitude.
    """
    w = hermitian_eigen(m).eigenvalues
    scale = float(np.abs(w).max())
    if scale == 0.0:
        return 0
    if tol is None:
        tol = 1e-10 * scale
    return int((np.abs(w) > tol).sum())
