"""Noise channels acting on three qubits.

Each channel couples every qubit independently to its environment through
jump operators sqrt(k) * sigma_alpha; the Pauli channels use one alpha per
qubit (3 operators), the depolarizing channel all three (9 operators).
The master equation has no coherent term, so the evolution is pure
dissipation.  Two evolution paths are provided: a fixed-step RK4
integrator of the operator-sum right-hand side, and the closed-form
evolved density matrices, which serve as each other's oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import linalg, qsys
from .qsys import InvariantViolationError


class Channel(Enum):
    PAULI_Z = "pauli-z"
    PAULI_X = "pauli-x"
    PAULI_Y = "pauli-y"
    DEPOLARIZING = "depolarizing"


class InitialState(Enum):
    GHZ = "ghz"
    W = "w"


class StepTooLargeError(ValueError):
    """Integrator step exceeds k*dt = 0.1."""


@dataclass(frozen=True)
class ChannelSpec:
    """Channel kind plus coupling constant k (inverse decoherence time)."""

    kind: Channel
    k: float = 1.0

    def __post_init__(self):
        if not self.k > 0.0:
            raise ValueError(f"coupling constant must be positive, got {self.k!r}")


_SINGLE = {"x": qsys.PAULI_X, "y": qsys.PAULI_Y, "z": qsys.PAULI_Z}


def _embed(sigma: np.ndarray, qubit: int) -> np.ndarray:
    factors = [qsys.IDENTITY_2, qsys.IDENTITY_2, qsys.IDENTITY_2]
    factors[qubit - 1] = sigma
    return linalg.kron(linalg.kron(factors[0], factors[1]), factors[2])


def lindblad_ops(spec: ChannelSpec) -> np.ndarray:
    """Jump operators as a stacked (n, 8, 8) array, each sqrt(k) * Pauli embed.

    Pauli channels produce 3 operators (one per qubit); the depolarizing
    channel 9 (qubit-major, alpha in x, y, z order).
    """
    alphas = {
        Channel.PAULI_Z: ("z",),
        Channel.PAULI_X: ("x",),
        Channel.PAULI_Y: ("y",),
        Channel.DEPOLARIZING: ("x", "y", "z"),
    }[spec.kind]
    root_k = np.sqrt(spec.k)
    ops = [
        root_k * _embed(_SINGLE[alpha], qubit)
        for qubit in (1, 2, 3)
        for alpha in alphas
    ]
    return np.stack(ops)


def lindblad_rhs(rho, ops: np.ndarray) -> np.ndarray:
    """Dissipator sum_i (L_i rho L_i^dag - (1/2){L_i^dag L_i, rho})."""
    rho = np.asarray(rho, dtype=complex)
    ops_dag = ops.conj().transpose(0, 2, 1)
    gain = np.einsum("nij,jk,nlk->il", ops, rho, ops.conj())
    ll = np.einsum("nji,njk->ik", ops.conj(), ops)
    return gain - 0.5 * (ll @ rho + rho @ ll)


def evolve_numeric(rho0, spec: ChannelSpec, t: float, dt: float) -> np.ndarray:
    """Classical fixed-step RK4 integration of the master equation.

    A final partial step covers any remainder of t.  The output is
    re-symmetrized and clamped to the PSD cone (roundoff only) and must
    satisfy the density-matrix invariants to 1e-6, else
    InvariantViolationError is raised.
    """
    if t < 0.0:
        raise ValueError(f"evolution time must be non-negative, got {t!r}")
    rho = qsys.validate_density(rho0).copy()
    if t == 0.0:
        return rho
    if not dt > 0.0:
        raise ValueError(f"step size must be positive, got {dt!r}")
    if spec.k * dt > 0.1:
        raise StepTooLargeError(
            f"k*dt = {spec.k * dt:.3g} exceeds 0.1; decrease the step"
        )

    ops = lindblad_ops(spec)

    def rhs(r):
        return lindblad_rhs(r, ops)

    n_full = int(t / dt)
    rem = t - n_full * dt
    steps = [dt] * n_full + ([rem] if rem > 1e-15 * t else [])
    for h in steps:
        k1 = rhs(rho)
        k2 = rhs(rho + 0.5 * h * k1)
        k3 = rhs(rho + 0.5 * h * k2)
        k4 = rhs(rho + h * k3)
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    rho = (rho + rho.conj().T) / 2.0
    w, v = linalg.hermitian_eigen(rho)
    if w[-1] < -1e-6 or abs(np.trace(rho) - 1.0) > 1e-6:
        raise InvariantViolationError(
            f"integrator output violates invariants (min eig {w[-1]:.3e}, "
            f"trace {complex(np.trace(rho)):.8f})"
        )
    if w[-1] < 0.0:
        w = np.where(w < 0.0, 0.0, w)
        rho = (v * w) @ v.conj().T
        rho = (rho + rho.conj().T) / 2.0
        rho = rho / np.trace(rho).real
    return qsys.validate_density(rho)


# ---------------------------------------------------------------------------
# Closed-form evolved density matrices
# ---------------------------------------------------------------------------

def analytic_coefficients(initial, channel, kt: float) -> dict[str, float]:
    """Time-dependent scalars of the closed-form solution for one pair.

    All values are signed sums of at most four decaying exponentials with
    unit weights, hence confined to [0, 4] for kt >= 0.
    """
    initial, channel = _as_initial(initial), _as_channel(channel)
    if kt < 0.0:
        raise ValueError(f"kt must be non-negative, got {kt!r}")
    if initial is InitialState.GHZ:
        if channel is Channel.PAULI_Z:
            return {"coherence": np.exp(-6.0 * kt)}
        if channel is Channel.PAULI_X:
            e4 = np.exp(-4.0 * kt)
            return {"alpha_plus": 1.0 + 3.0 * e4, "alpha_minus": 1.0 - e4}
        if channel is Channel.PAULI_Y:
            e2, e4, e6 = np.exp(-2.0 * kt), np.exp(-4.0 * kt), np.exp(-6.0 * kt)
            return {
                "alpha_plus": 1.0 + 3.0 * e4,
                "alpha_minus": 1.0 - e4,
                "beta_corner": 3.0 * e2 + e6,
                "beta_cross": e2 - e6,
            }
        e8, e12 = np.exp(-8.0 * kt), np.exp(-12.0 * kt)
        return {
            "alpha_plus": 1.0 + 3.0 * e8,
            "alpha_minus": 1.0 - e8,
            "gamma": 4.0 * e12,
        }
    if channel is Channel.PAULI_Z:
        return {"coherence": np.exp(-4.0 * kt)}
    if channel in (Channel.PAULI_X, Channel.PAULI_Y):
        e2, e4, e6 = np.exp(-2.0 * kt), np.exp(-4.0 * kt), np.exp(-6.0 * kt)
        return {
            "alpha_1": 1.0 + e2 + e4 + e6,
            "alpha_2": 1.0 + e2 - e4 - e6,
            "alpha_3": 1.0 - e2 - e4 + e6,
            "alpha_4": 1.0 - e2 + e4 - e6,
            "beta_plus": 1.0 + e6,
            "beta_minus": 1.0 - e6,
        }
    e4, e8, e12 = np.exp(-4.0 * kt), np.exp(-8.0 * kt), np.exp(-12.0 * kt)
    return {
        "alpha_1": 1.0 + e4 + e8 + e12,
        "alpha_2": 1.0 + e4 - e8 - e12,
        "alpha_3": 1.0 - e4 - e8 + e12,
        "alpha_4": 1.0 - e4 + e8 - e12,
        "beta_plus": 1.0 + e12,
        "beta_minus": 1.0 - e12,
        "gamma_plus": e8 + e12,
        "gamma_minus": e8 - e12,
    }


def _sym(entries: dict, scale: float) -> np.ndarray:
    rho = np.zeros((8, 8), dtype=complex)
    for (i, j), val in entries.items():
        rho[i, j] = val
        rho[j, i] = val
    return rho * scale


def _as_channel(channel) -> Channel:
    if isinstance(channel, ChannelSpec):
        return channel.kind
    if isinstance(channel, Channel):
        return channel
    return Channel(str(channel))


def _as_initial(initial) -> InitialState:
    if isinstance(initial, InitialState):
        return initial
    return InitialState(str(initial).lower())


def evolve_analytic(initial, channel, kt: float) -> np.ndarray:
    """Closed-form evolved density matrix at dimensionless time kt.

    For the W state under the bit-flip/bit-phase-flip channels the two
    solutions share one matrix template with opposite signs on a subset
    of coherences (+ for pauli-x, - for pauli-y).
    """
    initial, kind = _as_initial(initial), _as_channel(channel)
    c = analytic_coefficients(initial, kind, kt)

    if initial is InitialState.GHZ:
        if kind is Channel.PAULI_Z:
            return _sym({(0, 0): 1.0, (7, 7): 1.0, (0, 7): c["coherence"]}, 0.5)
        if kind in (Channel.PAULI_X, Channel.PAULI_Y):
            corner = c["alpha_plus"] if kind is Channel.PAULI_X else c["beta_corner"]
            cross = c["alpha_minus"] if kind is Channel.PAULI_X else -c["beta_cross"]
            entries = {(0, 0): c["alpha_plus"], (7, 7): c["alpha_plus"], (0, 7): corner}
            for i in (1, 2, 3):
                entries[(i, i)] = c["alpha_minus"]
                entries[(7 - i, 7 - i)] = c["alpha_minus"]
                entries[(i, 7 - i)] = cross
            return _sym(entries, 1.0 / 8.0)
        entries = {(0, 0): c["alpha_plus"], (7, 7): c["alpha_plus"], (0, 7): c["gamma"]}
        for i in range(1, 7):
            entries[(i, i)] = c["alpha_minus"]
        return _sym(entries, 1.0 / 8.0)

    if kind is Channel.PAULI_Z:
        x = c["coherence"]
        r2 = np.sqrt(2.0)
        return _sym(
            {
                (1, 1): 2.0, (2, 2): 1.0, (4, 4): 1.0,
                (1, 2): r2 * x, (1, 4): r2 * x, (2, 4): x,
            },
            0.25,
        )
    if kind in (Channel.PAULI_X, Channel.PAULI_Y):
        s = 1.0 if kind is Channel.PAULI_X else -1.0
        a1, a2, a3, a4 = c["alpha_1"], c["alpha_2"], c["alpha_3"], c["alpha_4"]
        bp, bm = c["beta_plus"], c["beta_minus"]
        r2 = np.sqrt(2.0)
        return _sym(
            {
                (0, 0): 2 * a2, (0, 3): s * r2 * a2, (0, 5): s * r2 * a2, (0, 6): s * a2,
                (1, 1): 2 * a1, (1, 2): r2 * a1, (1, 4): r2 * a1, (1, 7): s * a3,
                (2, 2): 2 * bp, (2, 4): a1, (2, 7): s * r2 * a3,
                (3, 3): 2 * bm, (3, 5): a4, (3, 6): r2 * a4,
                (4, 4): 2 * bp, (4, 7): s * r2 * a3,
                (5, 5): 2 * bm, (5, 6): r2 * a4,
                (6, 6): 2 * a4, (7, 7): 2 * a3,
            },
            1.0 / 16.0,
        )
    a1, a2, a3, a4 = c["alpha_1"], c["alpha_2"], c["alpha_3"], c["alpha_4"]
    bp, bm = c["beta_plus"], c["beta_minus"]
    gp, gm = c["gamma_plus"], c["gamma_minus"]
    r2 = np.sqrt(2.0)
    return _sym(
        {
            (0, 0): a2,
            (1, 1): a1, (1, 2): r2 * gp, (1, 4): r2 * gp,
            (2, 2): bp, (2, 4): gp,
            (3, 3): bm, (3, 5): gm, (3, 6): r2 * gm,
            (4, 4): bp,
            (5, 5): bm, (5, 6): r2 * gm,
            (6, 6): a4,
            (7, 7): a3,
        },
        1.0 / 8.0,
    )


def initial_state(initial) -> np.ndarray:
    """State vector of the named initial state."""
    return qsys.make_ghz() if _as_initial(initial) is InitialState.GHZ else qsys.make_w()
