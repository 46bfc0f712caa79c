"""Cross-checks between the compiled and pure-Python kernel twins."""

import numpy as np
import pytest

import decolab
from decolab import _fallback
from decolab.convexroof import _random_isometry, _round_robin
from decolab.measures import pure_c3

native = pytest.importorskip("decolab._native")


def _random_hermitian(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2


def test_eigh_twins_agree(rng):
    for n in (2, 4, 8):
        for _ in range(20):
            h = _random_hermitian(rng, n)
            wn, vn, _, okn = native.eigh_jacobi(h, 60)
            wp, vp, _, okp = _fallback.eigh_jacobi(h, 60)
            assert okn and okp
            assert np.allclose(np.sort(wn), np.sort(wp), atol=1e-12)
            for w, v in ((wn, vn), (wp, vp)):
                assert np.linalg.norm((v * w) @ v.conj().T - h) < 1e-12


def test_member_weights_twins_agree(rng):
    phi = rng.standard_normal((12, 8)) + 1j * rng.standard_normal((12, 8))
    phi = np.ascontiguousarray(phi)
    assert np.allclose(native.member_weights(phi), _fallback.member_weights(phi),
                       atol=1e-13)


def test_ensemble_value_matches_weighted_concurrence(rng):
    # sum_i p_i C3(psi_i) computed from normalized states one by one
    m = 6
    states = rng.standard_normal((m, 8)) + 1j * rng.standard_normal((m, 8))
    states /= np.linalg.norm(states, axis=1)[:, None]
    p = rng.random(m)
    p /= p.sum()
    phi = np.ascontiguousarray(states * np.sqrt(p)[:, None])
    expected = sum(pi * pure_c3(psi) for pi, psi in zip(p, states))
    assert abs(native.ensemble_value(phi) - expected) < 1e-12
    assert abs(_fallback.ensemble_value(phi) - expected) < 1e-12


def test_pair_descend_twins_reach_same_value():
    rho = decolab.evolve_analytic("ghz", "pauli-z", 0.25)
    w, v = decolab.hermitian_eigen(rho)
    keep = w > 1e-12
    a = v[:, keep] * np.sqrt(w[keep])
    m, r = 4, int(keep.sum())
    rounds = _round_robin(m)
    results = {}
    for mod in (native, _fallback):
        iso = _random_isometry(m, r, seed=3, restart=1)
        phi = np.ascontiguousarray(iso @ a.T)
        val, _, conv = mod.pair_descend(phi, iso, rounds, 160, 1e-9, 12, 16, 28)
        assert conv
        recon = phi.T @ phi.conj()
        assert np.abs(recon - rho).max() < 1e-10
        results[mod.__name__] = val
    vals = list(results.values())
    assert abs(vals[0] - vals[1]) < 1e-7


def test_pair_descend_rerun_is_bit_identical():
    rho = decolab.evolve_analytic("w", "pauli-z", 0.3)
    w, v = decolab.hermitian_eigen(rho)
    keep = w > 1e-12
    a = v[:, keep] * np.sqrt(w[keep])
    m, r = 9, int(keep.sum())
    rounds = _round_robin(m)
    vals = []
    for _ in range(2):
        iso = _random_isometry(m, r, seed=1, restart=2)
        phi = np.ascontiguousarray(iso @ a.T)
        val, sweeps, conv = native.pair_descend(phi, iso, rounds, 160, 1e-9, 12, 16, 28)
        vals.append((val, sweeps, conv, phi.copy()))
    assert vals[0][0] == vals[1][0]
    assert vals[0][1] == vals[1][1]
    assert np.array_equal(vals[0][3], vals[1][3])


def test_backend_selection_roundtrip():
    from decolab import backend

    start = backend.name()
    for name in decolab.backend_available():
        assert backend.select(name) == name
        assert backend.name() == name
    backend.select(start)
    with pytest.raises(ValueError):
        backend.select("fortran")
