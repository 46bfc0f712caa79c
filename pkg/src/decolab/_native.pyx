# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: the cyclic complex Jacobi eigensolver and the
pairwise Givens descent of the convex-roof minimizer.

Same API and same algorithms as :mod:`decolab._fallback`; only the
execution strategy differs (tight C loops instead of vectorized numpy).
"""

from libc.math cimport sqrt, fabs, cos, sin, M_PI

import numpy as np


# ---------------------------------------------------------------------------
# Jacobi eigensolver
# ---------------------------------------------------------------------------

def eigh_jacobi(a, int max_sweeps=60):
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns ``(w, v, sweeps, converged)`` with unsorted eigenvalues in
    diagonal order; sorting and Hermiticity checks live in the caller.
    """
    a_arr = np.array(a, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = a_arr.shape[0]
    v_arr = np.eye(n, dtype=np.complex128)
    w_arr = np.empty(n, dtype=np.float64)
    cdef double complex[:, ::1] A = a_arr
    cdef double complex[:, ::1] V = v_arr
    cdef double[::1] W = w_arr

    cdef int sweeps = 0
    cdef bint converged = False
    cdef double scale = 0.0, off, tol, skip, h, tau, t, c, s
    cdef double complex apq, f, fb, t1, t2
    cdef Py_ssize_t p, q, i

    with nogil:
        for p in range(n):
            for q in range(n):
                scale += A[p, q].real * A[p, q].real + A[p, q].imag * A[p, q].imag
    scale = sqrt(scale)
    if scale == 0.0:
        w_arr[:] = 0.0
        return w_arr, v_arr, 0, True
    tol = 1e-14 * scale
    skip = tol / (4.0 * n)

    with nogil:
        while sweeps < max_sweeps:
            off = 0.0
            for p in range(n - 1):
                for q in range(p + 1, n):
                    off += 2.0 * (A[p, q].real * A[p, q].real + A[p, q].imag * A[p, q].imag)
            if sqrt(off) <= tol:
                converged = True
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = A[p, q]
                    h = abs(apq)
                    if h <= skip:
                        continue
                    f = apq / h
                    tau = (A[q, q].real - A[p, p].real) / (2.0 * h)
                    t = 1.0 / (fabs(tau) + sqrt(1.0 + tau * tau))
                    if tau < 0.0:
                        t = -t
                    c = 1.0 / sqrt(1.0 + t * t)
                    s = t * c
                    fb = f.conjugate()
                    for i in range(n):
                        t1 = A[i, p]
                        t2 = A[i, q]
                        A[i, p] = c * t1 - s * fb * t2
                        A[i, q] = s * t1 + c * fb * t2
                    for i in range(n):
                        t1 = A[p, i]
                        t2 = A[q, i]
                        A[p, i] = c * t1 - s * f * t2
                        A[q, i] = s * t1 + c * f * t2
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                    A[p, p] = A[p, p].real
                    A[q, q] = A[q, q].real
                    for i in range(n):
                        t1 = V[i, p]
                        t2 = V[i, q]
                        V[i, p] = c * t1 - s * fb * t2
                        V[i, q] = s * t1 + c * fb * t2
            sweeps += 1
        for i in range(n):
            W[i] = A[i, i].real

    return w_arr, v_arr, sweeps, converged


# ---------------------------------------------------------------------------
# Ensemble objective and pairwise descent
# ---------------------------------------------------------------------------

cdef inline double _weight8(double complex *ph) nogil:
    """p * C3(phi/sqrt(p)) of one unnormalized member, via the three
    single-qubit Gram determinants of the (2, 4) reshapes."""
    cdef double tot = 0.0, aa, bb
    cdef double complex ab, za, zb
    cdef Py_ssize_t i, ia

    # qubit 1: indices {0..3} vs {4..7}
    aa = 0.0
    bb = 0.0
    ab = 0.0
    for i in range(4):
        za = ph[i]
        zb = ph[i + 4]
        aa += za.real * za.real + za.imag * za.imag
        bb += zb.real * zb.real + zb.imag * zb.imag
        ab = ab + za.conjugate() * zb
    tot += aa * bb - ab.real * ab.real - ab.imag * ab.imag

    # qubit 2: indices {0,1,4,5} vs {2,3,6,7}
    aa = 0.0
    bb = 0.0
    ab = 0.0
    for i in range(4):
        ia = (i >> 1) * 4 + (i & 1)
        za = ph[ia]
        zb = ph[ia + 2]
        aa += za.real * za.real + za.imag * za.imag
        bb += zb.real * zb.real + zb.imag * zb.imag
        ab = ab + za.conjugate() * zb
    tot += aa * bb - ab.real * ab.real - ab.imag * ab.imag

    # qubit 3: even vs odd indices
    aa = 0.0
    bb = 0.0
    ab = 0.0
    for i in range(4):
        za = ph[2 * i]
        zb = ph[2 * i + 1]
        aa += za.real * za.real + za.imag * za.imag
        bb += zb.real * zb.real + zb.imag * zb.imag
        ab = ab + za.conjugate() * zb
    tot += aa * bb - ab.real * ab.real - ab.imag * ab.imag

    if tot < 0.0:
        tot = 0.0
    return sqrt(tot * (2.0 / 3.0))


cdef inline double _pair_val(double complex *u, double complex *w,
                             double c, double s, double complex e,
                             double complex *buf) nogil:
    cdef double complex se = s * e
    cdef double complex sec = se.conjugate()
    cdef Py_ssize_t i
    for i in range(8):
        buf[i] = c * u[i] + se * w[i]
        buf[8 + i] = -sec * u[i] + c * w[i]
    return _weight8(buf) + _weight8(buf + 8)


def member_weights(double complex[:, ::1] phi):
    """Per-member weighted concurrence, shape (m, 8) -> (m,)."""
    cdef Py_ssize_t i, m = phi.shape[0]
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(m):
            o[i] = _weight8(&phi[i, 0])
    return out


def ensemble_value(double complex[:, ::1] phi):
    """Average concurrence ``sum_i p_i C3(psi_i)`` of an unnormalized ensemble."""
    cdef double tot = 0.0
    cdef Py_ssize_t i
    with nogil:
        for i in range(phi.shape[0]):
            tot += _weight8(&phi[i, 0])
    return tot


def pair_descend(double complex[:, ::1] phi, double complex[:, ::1] v,
                 long[:, :, ::1] rounds, int max_sweeps=160, double ftol=1e-9,
                 int n_theta=12, int n_phi=16, int refine=28):
    """Minimize the average concurrence by sweeping Givens rotations over pairs.

    Mutates ``phi`` (m, 8) and the generating isometry ``v`` (m, r) in
    place; returns ``(value, sweeps, converged)``.  Matches the fallback
    implementation: coarse angle grid, best-of-four pattern refinement,
    strict-improvement acceptance, full objective recomputed per sweep.
    """
    cdef Py_ssize_t m = phi.shape[0], r = v.shape[1]
    cdef Py_ssize_t n_rounds = rounds.shape[0], per_round = rounds.shape[1]
    if m < 2 or n_rounds == 0:
        return ensemble_value(phi), 0, True

    th_arr = np.linspace(0.0, np.pi, n_theta, endpoint=False)[1:].copy()
    ph_arr = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    cdef double[::1] ths = th_arr
    cdef double[::1] phs = ph_arr
    cdef Py_ssize_t n_th = ths.shape[0]
    cdef double theta_step = M_PI / n_theta
    cdef double phi_step = 2.0 * M_PI / n_phi

    cdef double complex buf[16]
    cdef double value = 0.0, prev, base, best, val, bth, bph, dt, dp
    cdef double cth, sth, cand_best, cand_th, cand_ph, try_th, try_ph
    cdef double complex e, se
    cdef double complex t1, t2
    cdef Py_ssize_t ridx, j, p, q, it, ip, i, cand
    cdef int sweeps = 0, rr
    cdef bint converged = False, improved

    with nogil:
        for i in range(m):
            value += _weight8(&phi[i, 0])
        while sweeps < max_sweeps:
            prev = value
            for ridx in range(n_rounds):
                for j in range(per_round):
                    p = rounds[ridx, j, 0]
                    q = rounds[ridx, j, 1]
                    if p < 0:
                        continue
                    base = _weight8(&phi[p, 0]) + _weight8(&phi[q, 0])
                    # coarse grid (theta = 0 excluded; identity is the baseline)
                    best = base + 1.0
                    bth = 0.0
                    bph = 0.0
                    for it in range(n_th):
                        cth = cos(ths[it])
                        sth = sin(ths[it])
                        for ip in range(n_phi):
                            e = cos(phs[ip]) + 1j * sin(phs[ip])
                            val = _pair_val(&phi[p, 0], &phi[q, 0], cth, sth, e, buf)
                            if val < best:
                                best = val
                                bth = ths[it]
                                bph = phs[ip]
                    if base <= best:
                        best = base
                        bth = 0.0
                        bph = 0.0
                    # best-of-four pattern refinement with step shrinking
                    dt = theta_step * 0.5
                    dp = phi_step * 0.5
                    for rr in range(refine):
                        cand_best = best + 1.0
                        cand_th = bth
                        cand_ph = bph
                        for cand in range(4):
                            if cand == 0:
                                try_th = bth + dt
                                try_ph = bph
                            elif cand == 1:
                                try_th = bth - dt
                                try_ph = bph
                            elif cand == 2:
                                try_th = bth
                                try_ph = bph + dp
                            else:
                                try_th = bth
                                try_ph = bph - dp
                            e = cos(try_ph) + 1j * sin(try_ph)
                            val = _pair_val(&phi[p, 0], &phi[q, 0],
                                            cos(try_th), sin(try_th), e, buf)
                            if val < cand_best:
                                cand_best = val
                                cand_th = try_th
                                cand_ph = try_ph
                        if cand_best < best - 1e-16:
                            best = cand_best
                            bth = cand_th
                            bph = cand_ph
                        else:
                            dt *= 0.5
                            dp *= 0.5
                    if best < base - 1e-15:
                        cth = cos(bth)
                        se = sin(bth) * (cos(bph) + 1j * sin(bph))
                        for i in range(8):
                            t1 = phi[p, i]
                            t2 = phi[q, i]
                            phi[p, i] = cth * t1 + se * t2
                            phi[q, i] = -se.conjugate() * t1 + cth * t2
                        for i in range(r):
                            t1 = v[p, i]
                            t2 = v[q, i]
                            v[p, i] = cth * t1 + se * t2
                            v[q, i] = -se.conjugate() * t1 + cth * t2
            value = 0.0
            for i in range(m):
                value += _weight8(&phi[i, 0])
            sweeps += 1
            if prev - value < ftol:
                converged = True
                break

    return value, sweeps, converged
