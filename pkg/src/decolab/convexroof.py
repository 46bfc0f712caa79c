"""Numerical convex-roof minimization over pure-state decompositions.

Every decomposition of rho into ``m`` pure states is generated by an m x r
isometry acting on the square-root-scaled eigenvectors of rho (r = rank).
The minimizer sweeps Givens rotations over all member pairs (a round-robin
schedule of disjoint pairs per round), each pair optimized over a rotation
angle and relative phase by coarse grid plus pattern refinement.  Restarts
draw Haar-random isometry starts from a deterministic per-restart seed;
restart 0 always starts from the eigendecomposition itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import backend, linalg, measures
from .channels import InitialState

EIGENVALUE_TOL = 1e-12      # eigenvalues of rho below this do not count as rank
MEMBER_DROP_TOL = 1e-14     # ensemble members lighter than this are dropped
ISOMETRY_TOL = 1e-8
RECONSTRUCTION_TOL = 1e-8


class NotIsometryError(ValueError):
    """v^dag v deviates from the identity beyond ISOMETRY_TOL."""


class DegenerateError(ValueError):
    """The input state has numerical rank zero."""


@dataclass(frozen=True)
class Ensemble:
    """Probability-weighted pure states decomposing a density matrix."""

    probabilities: np.ndarray   # (m,)
    states: np.ndarray          # (m, 8), rows normalized

    @property
    def cardinality(self) -> int:
        return int(self.probabilities.size)

    @property
    def members(self) -> list[tuple[float, np.ndarray]]:
        return [
            (float(p), self.states[i])
            for i, p in enumerate(self.probabilities)
        ]

    def reconstruct(self) -> np.ndarray:
        """sum_i p_i |psi_i><psi_i|."""
        weighted = self.states * np.sqrt(self.probabilities)[:, None]
        return weighted.T @ weighted.conj()


@dataclass(frozen=True)
class RoofResult:
    value_raw: float
    value_normalized: float
    best_ensemble: Ensemble
    restarts_used: int
    converged: bool


def _range_factor(rho) -> np.ndarray:
    """Columns sqrt(mu_j) |e_j> over the nonzero eigenvalues of rho."""
    w, v = linalg.hermitian_eigen(rho)
    keep = w > EIGENVALUE_TOL
    if not keep.any():
        raise DegenerateError("state has numerical rank zero")
    return v[:, keep] * np.sqrt(w[keep])


def ensemble_from_isometry(rho, v) -> Ensemble:
    """Decomposition |phi_i> = sum_j v_ij sqrt(mu_j) |e_j>, normalized.

    ``v`` must have orthonormal columns (m x r with m >= r); members with
    weight below MEMBER_DROP_TOL are dropped.
    """
    v = np.asarray(v, dtype=complex)
    a = _range_factor(rho)
    r = a.shape[1]
    if v.ndim != 2 or v.shape[1] != r or v.shape[0] < r:
        raise NotIsometryError(
            f"expected an m x {r} matrix with m >= {r}, got shape {v.shape}"
        )
    gram = v.conj().T @ v
    if np.abs(gram - np.eye(r)).max() > ISOMETRY_TOL:
        raise NotIsometryError("columns are not orthonormal")
    phi = v @ a.T
    p = np.einsum("ij,ij->i", phi.conj(), phi).real
    keep = p >= MEMBER_DROP_TOL
    phi, p = phi[keep], p[keep]
    return Ensemble(probabilities=p, states=phi / np.sqrt(p)[:, None])


@lru_cache(maxsize=32)
def _round_robin(m: int) -> np.ndarray:
    """Schedule of all m(m-1)/2 pairs as rounds of disjoint pairs."""
    players = list(range(m)) + ([-1] if m % 2 else [])
    n = len(players)
    rounds = []
    for _ in range(max(n - 1, 0)):
        pairs = [
            (min(a, b), max(a, b))
            for a, b in ((players[i], players[n - 1 - i]) for i in range(n // 2))
            if a >= 0 and b >= 0
        ]
        rounds.append(pairs)
        players = [players[0], players[-1]] + players[1:-1]
    width = max((len(r) for r in rounds), default=0)
    table = np.full((len(rounds), max(width, 1), 2), -1, dtype=np.int64)
    for i, pairs in enumerate(rounds):
        for j, pq in enumerate(pairs):
            table[i, j] = pq
    return table


def _random_isometry(m: int, r: int, seed: int, restart: int) -> np.ndarray:
    rng = np.random.default_rng([seed, restart])
    g = rng.standard_normal((m, r)) + 1j * rng.standard_normal((m, r))
    q, rr = np.linalg.qr(g)
    d = np.diagonal(rr)
    return q * (d.conj() / np.abs(d))


def _pure_normalization(family) -> float:
    if family is None:
        return 1.0
    family = InitialState(family) if not isinstance(family, InitialState) else family
    if family is InitialState.GHZ:
        return 1.0 / measures.GHZ_PURE_C3
    return 1.0 / measures.W_PURE_C3


def roof_minimize(rho, family=None, cardinality: int | None = None,
                  restarts: int = 32, seed: int = 0,
                  max_sweeps: int = 160, ftol: float = 1e-9) -> RoofResult:
    """Minimize the average pure-state concurrence over decompositions.

    Deterministic: identical (rho, cardinality, restarts, seed) inputs
    reproduce the result bit for bit on a given backend.  The best restart
    wins; ties go to the lowest restart index.  ``normalized`` divides by
    the pure-state concurrence of the family's initial state, matching the
    normalization of the tau3 curves.
    """
    if restarts < 1:
        raise ValueError("at least one restart is required")
    rho = np.asarray(rho, dtype=complex)
    a = _range_factor(rho)
    r = a.shape[1]
    m = r * r if cardinality is None else int(cardinality)
    if m < r:
        raise ValueError(f"cardinality {m} is below the state rank {r}")
    rounds = _round_robin(m)

    best_value = np.inf
    best_v = None
    best_converged = False
    for restart in range(restarts):
        if restart == 0:
            v = np.zeros((m, r), dtype=complex)
            v[:r, :r] = np.eye(r)
        else:
            v = _random_isometry(m, r, seed, restart)
        phi = np.ascontiguousarray(v @ a.T)
        value, _, converged = backend.pair_descend(
            phi, v, rounds, max_sweeps=max_sweeps, ftol=ftol
        )
        if value < best_value:
            best_value = value
            best_v = v
            best_converged = converged

    ensemble = ensemble_from_isometry(rho, best_v)
    recon_err = np.abs(ensemble.reconstruct() - rho).max()
    if recon_err > RECONSTRUCTION_TOL:
        raise RuntimeError(
            f"optimized ensemble drifted from its source state ({recon_err:.3e})"
        )
    return RoofResult(
        value_raw=float(best_value),
        value_normalized=float(best_value * _pure_normalization(family)),
        best_ensemble=ensemble,
        restarts_used=restarts,
        converged=best_converged,
    )
