"""Pure-numpy implementations of the hot kernels.

This module mirrors the API of the compiled ``decolab._native`` extension
and is selected by :mod:`decolab.backend` when the extension is missing
(or when ``DECOLAB_BACKEND=python``).  Both backends implement the same
algorithms; only the execution strategy differs (vectorized numpy here,
tight C loops there).

Kernels
-------
``eigh_jacobi``
    Cyclic complex Jacobi eigensolver for Hermitian matrices.
``member_weights`` / ``ensemble_value``
    Probability-weighted pure-state concurrence of unnormalized
    three-qubit vectors, ``p_i * C3(phi_i/|phi_i|) = sqrt(2/3 * sum of
    single-qubit Gram determinants)``.
``pair_descend``
    Pairwise Givens descent over an ensemble: repeatedly mixes pairs of
    ensemble members with the 2x2 unitary ``[[c, s e^{i a}], [-s e^{-i a}, c]]``
    that most reduces the average concurrence.
"""

from __future__ import annotations

import numpy as np

# Row/column index split of an 8-vector by each qubit (qubit 1 = MSB).
_SPLIT_A = np.array([[0, 1, 2, 3], [0, 1, 4, 5], [0, 2, 4, 6]])
_SPLIT_B = np.array([[4, 5, 6, 7], [2, 3, 6, 7], [1, 3, 5, 7]])

_JACOBI_TOL = 1e-14  # off-diagonal Frobenius target, relative to input scale


def eigh_jacobi(a, max_sweeps=60):
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns ``(w, v, sweeps, converged)`` with unsorted real eigenvalues
    ``w`` (diagonal order) and unitary ``v`` whose columns are the
    matching eigenvectors.  The caller is responsible for sorting and
    for rejecting non-Hermitian input.
    """
    a = np.array(a, dtype=np.complex128)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n), v, 0, True
    tol = _JACOBI_TOL * scale
    skip = tol / (4.0 * n)

    sweeps = 0
    converged = False
    while sweeps < max_sweeps:
        off = np.linalg.norm(a - np.diag(np.diagonal(a)))
        if off <= tol:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                h = abs(apq)
                if h <= skip:
                    continue
                f = apq / h
                tau = (a[q, q].real - a[p, p].real) / (2.0 * h)
                t = 1.0 / (abs(tau) + np.sqrt(1.0 + tau * tau))
                if tau < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                fb = np.conj(f)
                # a <- J^dag a J with J the (p,q) plane rotation diag-embedded
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * fb * cq
                a[:, q] = s * cp + c * fb * cq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * f * rq
                a[q, :] = s * rp + c * f * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * fb * vq
                v[:, q] = s * vp + c * fb * vq
        sweeps += 1

    return np.diagonal(a).real.copy(), v, sweeps, converged


def member_weights(phi):
    """Weighted concurrence of unnormalized members, shape ``(..., 8) -> (...)``.

    For ``phi = sqrt(p) * psi`` this equals ``p * C3(psi)``; the weight is
    a direct function of the unnormalized vector, which is what makes the
    ensemble objective cheap to update under pair rotations.
    """
    a = phi[..., _SPLIT_A]
    b = phi[..., _SPLIT_B]
    aa = np.einsum("...ki,...ki->...k", a.conj(), a).real
    bb = np.einsum("...ki,...ki->...k", b.conj(), b).real
    ab = np.einsum("...ki,...ki->...k", a.conj(), b)
    dets = aa * bb - ab.real**2 - ab.imag**2
    tot = dets.sum(axis=-1)
    return np.sqrt(np.maximum(tot, 0.0) * (2.0 / 3.0))


def ensemble_value(phi):
    """Average concurrence ``sum_i p_i C3(psi_i)`` of an unnormalized ensemble."""
    return float(member_weights(phi).sum())


def _pair_values(u, w, cos_t, sin_t, phase):
    """Objective of rotated member pairs, broadcasting over candidate angles."""
    se = (sin_t * phase)[..., None]
    c = cos_t[..., None]
    u2 = c * u + se * w
    w2 = -np.conj(se) * u + c * w
    return member_weights(u2) + member_weights(w2)


def pair_descend(phi, v, rounds, max_sweeps=160, ftol=1e-9,
                 n_theta=12, n_phi=16, refine=28):
    """Minimize the average concurrence by sweeping Givens rotations over pairs.

    ``phi`` is the (m, 8) array of unnormalized members and ``v`` the (m, r)
    isometry producing them; both are updated in place by the same
    rotations, so the ensemble always reconstructs the source state.
    ``rounds`` is a (R, P, 2) round-robin schedule of disjoint pairs
    (entries -1 pad odd rounds); disjointness lets each round be
    optimized as one batch.  Returns ``(value, sweeps, converged)``.
    """
    m = phi.shape[0]
    if m < 2 or rounds.size == 0:
        return ensemble_value(phi), 0, True

    thetas = np.linspace(0.0, np.pi, n_theta, endpoint=False)[1:]
    phis = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    theta_step = np.pi / n_theta
    phi_step = 2.0 * np.pi / n_phi
    grid_t = np.repeat(thetas, n_phi)
    grid_p = np.tile(phis, thetas.size)
    grid_c = np.cos(grid_t)
    grid_s = np.sin(grid_t)
    grid_e = np.exp(1j * grid_p)

    value = ensemble_value(phi)
    sweeps = 0
    converged = False
    while sweeps < max_sweeps:
        prev = value
        for rnd in rounds:
            ps = rnd[:, 0]
            qs = rnd[:, 1]
            live = ps >= 0
            if not live.all():
                ps, qs = ps[live], qs[live]
            if ps.size == 0:
                continue
            u = phi[ps]
            w = phi[qs]
            base = member_weights(u) + member_weights(w)

            vals = _pair_values(u[:, None, :], w[:, None, :],
                                grid_c[None, :], grid_s[None, :],
                                grid_e[None, :])
            gi = vals.argmin(axis=1)
            best = vals[np.arange(ps.size), gi]
            th = grid_t[gi]
            ph = grid_p[gi]
            # start the local refinement from the identity when the coarse
            # grid found nothing better than no rotation at all
            at_base = base <= best
            th = np.where(at_base, 0.0, th)
            ph = np.where(at_base, 0.0, ph)
            best = np.minimum(best, base)

            dt = np.full(ps.size, theta_step * 0.5)
            dp = np.full(ps.size, phi_step * 0.5)
            for _ in range(refine):
                cth = np.stack([th + dt, th - dt, th, th])
                cph = np.stack([ph, ph, ph + dp, ph - dp])
                cvals = _pair_values(u[None, :, :], w[None, :, :],
                                     np.cos(cth), np.sin(cth), np.exp(1j * cph))
                ci = cvals.argmin(axis=0)
                sel = np.arange(ps.size)
                cv = cvals[ci, sel]
                better = cv < best - 1e-16
                th = np.where(better, cth[ci, sel], th)
                ph = np.where(better, cph[ci, sel], ph)
                best = np.where(better, cv, best)
                dt = np.where(better, dt, dt * 0.5)
                dp = np.where(better, dp, dp * 0.5)

            accept = best < base - 1e-15
            if accept.any():
                ai = np.where(accept)[0]
                c = np.cos(th[ai])[:, None]
                se = (np.sin(th[ai]) * np.exp(1j * ph[ai]))[:, None]
                pu, qu = ps[ai], qs[ai]
                u0, w0 = phi[pu], phi[qu]
                phi[pu] = c * u0 + se * w0
                phi[qu] = -np.conj(se) * u0 + c * w0
                vu, vw = v[pu], v[qu]
                v[pu] = c * vu + se * vw
                v[qu] = -np.conj(se) * vu + c * vw

        value = ensemble_value(phi)
        sweeps += 1
        if prev - value < ftol:
            converged = True
            break

    return value, sweeps, converged
