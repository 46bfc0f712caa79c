"""Three-qubit state construction and subsystem manipulation.

Bit ordering convention (used by every module in the package): qubit 1 is
the most significant bit of the computational-basis index, so the basis
ket |q1 q2 q3> sits at index 4*q1 + 2*q2 + q3.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from . import linalg

STATE_NORM_TOL = 1e-12
DENSITY_TOL = 1e-10

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


class BadIndexError(ValueError):
    """Qubit index outside {1, 2, 3}."""


class BadPermutationError(ValueError):
    """Permutation is not a bijection on {1, 2, 3}."""


class InvariantViolationError(ValueError):
    """A matrix failed the density-matrix invariants."""


class BipartiteCut(Enum):
    """Grouping of the three qubits into a pair and a singleton.

    The permutation moves the paired qubits into the leading 4-dimensional
    tensor factor, where the pair/singleton operator sandwiches act.
    """

    PAIR_12 = "12|3"
    PAIR_13 = "13|2"
    PAIR_23 = "23|1"

    @property
    def kind(self) -> str:
        return self.value

    @property
    def permutation(self) -> tuple[int, int, int]:
        return {
            BipartiteCut.PAIR_12: (1, 2, 3),
            BipartiteCut.PAIR_13: (1, 3, 2),
            BipartiteCut.PAIR_23: (2, 3, 1),
        }[self]


CUTS = (BipartiteCut.PAIR_12, BipartiteCut.PAIR_13, BipartiteCut.PAIR_23)


def make_ghz() -> np.ndarray:
    """(|000> + |111>)/sqrt(2)."""
    psi = np.zeros(8, dtype=complex)
    psi[0] = psi[7] = 1.0 / np.sqrt(2.0)
    return psi


def make_w() -> np.ndarray:
    """(sqrt(2)|001> + |010> + |100>)/2, the asymmetric-weight W variant."""
    psi = np.zeros(8, dtype=complex)
    psi[1] = np.sqrt(2.0) / 2.0
    psi[2] = psi[4] = 0.5
    return psi


def validate_state(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (8,):
        raise ValueError(f"expected an 8-component state vector, got {psi.shape}")
    norm2 = float(np.vdot(psi, psi).real)
    if abs(norm2 - 1.0) > STATE_NORM_TOL:
        raise ValueError(f"state norm^2 = {norm2!r} is not 1 within {STATE_NORM_TOL:g}")
    return psi


def density(psi) -> np.ndarray:
    """Projector |psi><psi| of a normalized pure state."""
    psi = validate_state(psi)
    return np.outer(psi, psi.conj())


def validate_density(rho, tol: float = DENSITY_TOL) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity; returns the input array."""
    rho = linalg.as_matrix(rho)
    if rho.shape != (8, 8):
        raise InvariantViolationError(f"expected an 8x8 matrix, got {rho.shape}")
    if np.linalg.norm(rho - rho.conj().T) > tol:
        raise InvariantViolationError("density matrix is not Hermitian")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > tol:
        raise InvariantViolationError(f"trace {tr!r} differs from 1")
    wmin = linalg.hermitian_eigen(rho).eigenvalues[-1]
    if wmin < -tol:
        raise InvariantViolationError(f"negative eigenvalue {wmin:.3e}")
    return rho


def _check_qubit(q: int) -> int:
    if q not in (1, 2, 3):
        raise BadIndexError(f"qubit index must be 1, 2 or 3, got {q!r}")
    return q


def partial_trace(rho, keep: int) -> np.ndarray:
    """Reduced 2x2 state of one qubit, tracing out the other two."""
    _check_qubit(keep)
    t = linalg.as_matrix(rho).reshape(2, 2, 2, 2, 2, 2)
    spec = {1: "abcdbc->ad", 2: "abcaec->be", 3: "abcabf->cf"}[keep]
    return np.einsum(spec, t)


def partial_transpose(rho, qubit: int) -> np.ndarray:
    """Transpose applied to one qubit's indices only."""
    _check_qubit(qubit)
    t = linalg.as_matrix(rho).reshape(2, 2, 2, 2, 2, 2)
    return np.ascontiguousarray(
        np.swapaxes(t, qubit - 1, qubit + 2).reshape(8, 8)
    )


def _check_permutation(perm) -> tuple[int, int, int]:
    p = tuple(int(x) for x in perm)
    if sorted(p) != [1, 2, 3]:
        raise BadPermutationError(f"{perm!r} is not a permutation of (1, 2, 3)")
    return p


def permute_qubits(rho, perm) -> np.ndarray:
    """Relabel qubits: output slot j carries input qubit perm[j-1]."""
    p = _check_permutation(perm)
    axes = [p[0] - 1, p[1] - 1, p[2] - 1]
    t = linalg.as_matrix(rho).reshape(2, 2, 2, 2, 2, 2)
    return np.ascontiguousarray(
        t.transpose(axes + [a + 3 for a in axes]).reshape(8, 8)
    )
