import numpy as np
import pytest

from decolab import linalg, measures
from decolab.channels import Channel, InitialState, evolve_analytic
from decolab.measures import (
    GHZ_PURE_C3,
    GHZ_TAU3_RAW,
    W_PURE_C3,
    W_TAU3_RAW,
    cut_terms,
    generators,
    pure_c3,
    tau3,
    tilde_rho,
)
from decolab.qsys import CUTS, density, make_ghz, make_w, permute_qubits

from conftest import random_density


def test_pure_c3_ghz():
    assert abs(pure_c3(make_ghz()) - 1 / np.sqrt(2)) < 1e-12


def test_pure_c3_w():
    # marginal purities of the weighted W state are 5/8, 5/8 and 1/2,
    # giving sqrt((3 - 7/4)/3) = sqrt(5/12)
    assert abs(pure_c3(make_w()) - np.sqrt(5.0 / 12.0)) < 1e-12


def test_pure_c3_product_state():
    zero = np.zeros(8)
    zero[0] = 1.0
    assert pure_c3(zero) < 1e-12


def test_generator_l0_is_sigma_y():
    gen = generators()
    assert np.array_equal(gen.l0, np.array([[0, -1j], [1j, 0]]))


def test_generator_l12_first_entries():
    # (L_12)_mn = -i eps_12mn: only the (3,4)/(4,3) slots survive (1-based)
    l12 = generators().l12[0]
    expected = np.zeros((4, 4), dtype=complex)
    expected[2, 3] = -1j
    expected[3, 2] = 1j
    assert np.array_equal(l12, expected)


def test_generator_squares_are_rank2_projectors():
    for l in generators().l12:
        sq = l @ l
        assert np.allclose(sq, np.diag(np.diagonal(sq)), atol=0)
        diag = np.diagonal(sq).real
        assert sorted(diag) == [0.0, 0.0, 1.0, 1.0]


def test_sandwich_operators_real_symmetric_rank4():
    gen = generators()
    for l in gen.l12:
        s = np.kron(l, gen.l0)
        assert np.abs(s.imag).max() == 0.0
        assert np.array_equal(s, s.T)
        assert linalg.numerical_rank(s) == 4


def test_tilde_rho_rank_bounded(rng):
    rho = random_density(rng)
    for cut in CUTS:
        for i in (1, 4, 6):
            t = tilde_rho(rho, cut, i)
            assert linalg.numerical_rank(t, tol=1e-12) <= 4
            assert np.linalg.norm(t - t.conj().T) < 1e-12
            assert -1e-12 < np.trace(t).real < 1.0 + 1e-12


def test_tilde_rho_of_maximally_mixed():
    gen = generators()
    rho = np.eye(8) / 8.0
    for i, l in enumerate(gen.l12, start=1):
        s = np.kron(l, gen.l0)
        assert np.allclose(tilde_rho(rho, CUTS[0], i), s @ s / 8.0, atol=1e-15)


def test_tilde_rho_index_range():
    with pytest.raises(ValueError):
        tilde_rho(density(make_ghz()), CUTS[0], 7)


def test_cut_terms_product_state_all_zero():
    zero = np.zeros(8)
    zero[0] = 1.0
    for cut in CUTS:
        assert np.abs(cut_terms(density(zero), cut).terms).max() < 1e-12


def test_cut_terms_ghz_sums_to_one():
    rho = density(make_ghz())
    for cut in CUTS:
        b = cut_terms(rho, cut)
        assert abs(np.dot(b.terms, b.terms) - 1.0) < 1e-12
        assert np.all(b.lambdas >= 0)


def test_cut_terms_dephased_ghz_decay():
    for kt in (0.1, 0.6):
        rho = evolve_analytic("ghz", "pauli-z", kt)
        for cut in CUTS:
            b = cut_terms(rho, cut)
            assert abs(np.dot(b.terms, b.terms) - np.exp(-12 * kt)) < 1e-12


def test_tau3_anchor_constants():
    assert abs(tau3(density(make_ghz())).raw - GHZ_TAU3_RAW) < 1e-12
    assert abs(tau3(density(make_w())).raw - W_TAU3_RAW) < 1e-12
    assert abs(GHZ_TAU3_RAW - np.sqrt(2) * GHZ_PURE_C3) < 1e-15
    assert abs(W_TAU3_RAW - np.sqrt(2) * W_PURE_C3) < 1e-15


def test_tau3_normalized_starts_at_one():
    assert abs(tau3(density(make_ghz()), family="ghz").normalized - 1.0) < 1e-12
    assert abs(tau3(density(make_w()), family="w").normalized - 1.0) < 1e-12


def test_tau3_maximally_mixed_is_zero():
    assert tau3(np.eye(8) / 8.0).raw == 0.0


def test_tau3_closed_forms_spot_values():
    for kt in (0.05, 0.35, 1.1):
        assert abs(tau3(evolve_analytic("ghz", "pauli-z", kt), family="ghz").normalized
                   - np.exp(-6 * kt)) < 1e-12
        assert abs(tau3(evolve_analytic("ghz", "pauli-x", kt), family="ghz").normalized
                   - np.exp(-4 * kt)) < 1e-12
        assert abs(tau3(evolve_analytic("w", "pauli-z", kt), family="w").normalized
                   - np.exp(-4 * kt)) < 1e-12


def test_tau3_vanishes_past_crossing():
    # 3x + x^2 + x^3 = 1 has its root at kt ~ 0.6094; beyond it every term clips
    assert tau3(evolve_analytic("ghz", "pauli-y", 0.7), family="ghz").normalized == 0.0
    assert tau3(evolve_analytic("ghz", "depolarizing", 0.2), family="ghz").normalized == 0.0


def test_tau3_permutation_invariant(rng):
    rho = random_density(rng, rank=4)
    raw0 = tau3(rho).raw
    for perm in ((2, 1, 3), (3, 2, 1), (2, 3, 1)):
        assert abs(tau3(permute_qubits(rho, perm)).raw - raw0) < 1e-10


def test_tau3_result_structure(rng):
    rho = random_density(rng, rank=2)
    res = tau3(rho, family="w")
    total = sum(float(np.dot(b.terms, b.terms)) for b in res.per_cut)
    assert abs(res.raw - np.sqrt(total / 3.0)) < 1e-14
    assert abs(res.normalized - res.raw * res.normalization_factor) < 1e-14
    assert res.normalization_factor == 1.0 / W_TAU3_RAW
    assert [b.cut for b in res.per_cut] == list(CUTS)


def test_tau3_monotone_on_dense_grid():
    kts = np.linspace(0.0, 1.5, 200)
    for state in InitialState:
        for kind in Channel:
            values = [
                tau3(evolve_analytic(state, kind, kt), family=state).normalized
                for kt in kts
            ]
            assert np.all(np.diff(values) <= 1e-12), (state, kind)
