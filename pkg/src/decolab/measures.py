"""Entanglement quantification for three-qubit mixed states.

The lower bound tau3 sums, over the three bipartite cuts and six
pair-factor generators per cut, concurrence terms built from the spectrum
of rho * rho_tilde, where rho_tilde = S rho* S and S = L kron sigma_y is a
real symmetric rank-4 sandwich.  Because S is real symmetric, the product
spectrum is real and non-negative, so the terms reduce to Hermitian
eigenproblems that the Jacobi solver handles.

Normalization: decay curves are conventionally normalized so that the
initial pure state scores 1.  The raw anchors are derived, not assumed:
the pure GHZ state gives raw tau3 = 1 and raw C3 = sqrt(1/2); the
weighted-W variant used here gives raw tau3 = sqrt(5/6) and raw
C3 = sqrt(5/12) (its qubit-3 marginal is maximally mixed, the other two
have purity 5/8).  The test suite re-derives all four values by brute
force.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg, qsys
from .channels import InitialState
from .qsys import CUTS, BipartiteCut

# Eigenvalues of the sandwiched products below this are treated as exact
# zeros before the square root (rank(S) = 4 caps the true rank).
VANISHING_TOL = 1e-12
# Eigenvalues of rho below this do not contribute to its range factor.
RANGE_TOL = 1e-13

GHZ_PURE_C3 = np.sqrt(0.5)
W_PURE_C3 = np.sqrt(5.0 / 12.0)
GHZ_TAU3_RAW = 1.0
W_TAU3_RAW = np.sqrt(5.0 / 6.0)


@dataclass(frozen=True)
class GeneratorSet:
    """sigma_y for the singleton factor and the six 4x4 pair generators."""

    l0: np.ndarray
    l12: tuple[np.ndarray, ...]


@dataclass(frozen=True)
class CutBreakdown:
    """Per-generator concurrence terms of one bipartite cut.

    ``lambdas[i]`` holds the four retained eigenvalue square roots of the
    i-th sandwiched product in descending order; ``terms[i]`` is
    max(0, l1 - l2 - l3 - l4).
    """

    cut: BipartiteCut
    terms: np.ndarray
    lambdas: np.ndarray


@dataclass(frozen=True)
class Tau3Result:
    raw: float
    normalized: float
    normalization_factor: float
    per_cut: tuple[CutBreakdown, ...]


GENERATOR_INDEX_PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


def _levi_civita_4() -> np.ndarray:
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        inversions = sum(
            1 for a in range(4) for b in range(a + 1, 4) if perm[a] > perm[b]
        )
        eps[perm] = -1.0 if inversions % 2 else 1.0
    return eps


@lru_cache(maxsize=1)
def generators() -> GeneratorSet:
    """The SO(2) singleton generator sigma_y and six SO(4) pair generators.

    (L_kl)_mn = -i * epsilon_klmn with 1-based indices, enumerated in the
    fixed order (1,2), (1,3), (1,4), (2,3), (2,4), (3,4).
    """
    eps = _levi_civita_4()
    l12 = tuple(
        np.asarray(-1j * eps[k - 1, l - 1], dtype=complex)
        for (k, l) in GENERATOR_INDEX_PAIRS
    )
    return GeneratorSet(l0=qsys.PAULI_Y.copy(), l12=l12)


@lru_cache(maxsize=1)
def _sandwich_operators() -> tuple[np.ndarray, ...]:
    gen = generators()
    return tuple(linalg.kron(l, gen.l0).real.astype(float) for l in gen.l12)


def pure_c3(psi) -> float:
    """Raw pure-state three-qubit concurrence from the marginal purities."""
    rho = qsys.density(psi)
    total = 3.0
    for qubit in (1, 2, 3):
        reduced = qsys.partial_trace(rho, qubit)
        total -= float(np.trace(reduced @ reduced).real)
    return float(np.sqrt(max(total, 0.0) / 3.0))


def tilde_rho(rho, cut: BipartiteCut, i: int) -> np.ndarray:
    """S_i rho* S_i in the frame of the given cut (i is 1-based, 1..6)."""
    if not 1 <= i <= 6:
        raise ValueError(f"generator index must be in 1..6, got {i!r}")
    rp = qsys.permute_qubits(rho, cut.permutation)
    s = _sandwich_operators()[i - 1]
    return s @ rp.conj() @ s


def cut_terms(rho, cut: BipartiteCut) -> CutBreakdown:
    """The six concurrence terms of one bipartite cut.

    For each generator the nonzero spectrum of rho * rho_tilde is obtained
    from the Hermitian PSD matrix X^dag rho_tilde X, where X spans the
    range of rho scaled by the square roots of its eigenvalues (the
    range-compressed form of sqrt(rho) rho_tilde sqrt(rho), with the same
    nonzero spectrum and no spurious null-space contributions).
    """
    rp = qsys.permute_qubits(np.asarray(rho, dtype=complex), cut.permutation)
    w, v = linalg.hermitian_eigen(rp)
    keep = w > RANGE_TOL
    x = v[:, keep] * np.sqrt(w[keep])
    rp_conj = rp.conj()

    terms = np.zeros(6)
    lambdas = np.zeros((6, 4))
    for i, s in enumerate(_sandwich_operators()):
        m = x.conj().T @ (s @ rp_conj @ s) @ x
        ev = linalg.hermitian_eigen(m).eigenvalues
        ev = np.where(ev < VANISHING_TOL, 0.0, ev)
        lam = np.sqrt(ev)
        if lam.size < 4:
            lam = np.concatenate([lam, np.zeros(4 - lam.size)])
        lam = lam[:4]
        lambdas[i] = lam
        terms[i] = max(0.0, lam[0] - lam[1] - lam[2] - lam[3])
    return CutBreakdown(cut=cut, terms=terms, lambdas=lambdas)


def _normalization_factor(family) -> float:
    if family is None:
        return 1.0
    family = InitialState(family) if not isinstance(family, InitialState) else family
    if family is InitialState.GHZ:
        return 1.0 / GHZ_TAU3_RAW
    return 1.0 / W_TAU3_RAW


def tau3(rho, family=None) -> Tau3Result:
    """Lower bound to the three-qubit concurrence of a mixed state.

    raw = sqrt(sum of all 18 squared cut terms / 3).  With ``family`` set,
    ``normalized`` divides by the raw value of that family's initial pure
    state, so decay curves start at 1.
    """
    per_cut = tuple(cut_terms(rho, cut) for cut in CUTS)
    total = sum(float(np.dot(b.terms, b.terms)) for b in per_cut)
    raw = float(np.sqrt(total / 3.0))
    factor = _normalization_factor(family)
    return Tau3Result(
        raw=raw,
        normalized=raw * factor,
        normalization_factor=factor,
        per_cut=per_cut,
    )
