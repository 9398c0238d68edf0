import math

import numpy as np
import pytest
from scipy import integrate

from dimercorr.constants import HBAR, KB
from dimercorr.vibrational import (
    VibrationalBath,
    build_phonon_functions,
    coupling_rate,
    hf_renormalization,
    kappa0,
    phonon_propagator,
    reorganization_energy,
    spectral_density,
)

# Frozen oracles (adaptive quadrature, rel tol 1e-10, this module's first run):
KAPPA0_300K_LAM5 = 0.9836117675685645
KAPPA0_300K_LAM50 = 0.8476901921641662


@pytest.fixture(scope="module")
def bath5():
    return VibrationalBath(lambda0=5.0, omega_c=90.0, temperature=300.0)


@pytest.fixture(scope="module")
def phonon5(bath5):
    return build_phonon_functions(bath5)


# ------------------------------------------------------------ construction


def test_bath_validation():
    with pytest.raises(ValueError):
        VibrationalBath(lambda0=-1.0, omega_c=90.0, temperature=300.0)
    with pytest.raises(ValueError):
        VibrationalBath(lambda0=5.0, omega_c=0.0, temperature=300.0)
    with pytest.raises(ValueError):
        VibrationalBath(lambda0=5.0, omega_c=90.0, temperature=-10.0)
    with pytest.raises(ValueError):
        VibrationalBath(
            lambda0=5.0, omega_c=90.0, temperature=300.0, hf_modes=((0.1, 180.0, 0.0),)
        )


# -------------------------------------------------------- spectral_density


def test_spectral_density_zero_at_origin(bath5):
    assert spectral_density(0.0, bath5) == 0.0


def test_spectral_density_at_three_omega_c(bath5):
    expected = 0.5 * 5.0 * 27.0 * math.exp(-3.0)
    assert spectral_density(3.0 * 90.0, bath5) == pytest.approx(expected, rel=1e-12)


def test_spectral_density_rejects_negative(bath5):
    with pytest.raises(ValueError):
        spectral_density(-1.0, bath5)
    with pytest.raises(ValueError):
        spectral_density(np.array([1.0, -2.0]), bath5)


def test_continuum_reorganization_integral(bath5):
    val, _ = integrate.quad(
        lambda w: spectral_density(w, bath5) / w, 1e-12, 40 * 90.0, limit=200
    )
    assert val == pytest.approx(5.0, rel=1e-6)


# -------------------------------------------------- reorganization_energy


def test_reorganization_plain(bath5):
    assert reorganization_energy(bath5) == pytest.approx(5.0, rel=1e-12)
    b50 = VibrationalBath(lambda0=50.0, omega_c=90.0, temperature=300.0)
    assert reorganization_energy(b50) == pytest.approx(50.0, rel=1e-12)


def test_hf_reorganization_matches_narrow_peak_estimate():
    alpha, w0, gam = 2e-5, 180.0, 18.0  # gamma / omega = 0.1
    bath = VibrationalBath(
        lambda0=0.0, omega_c=90.0, temperature=300.0, hf_modes=((alpha, w0, gam),)
    )
    estimate = alpha * math.sqrt(math.pi) * w0**2 * gam
    assert reorganization_energy(bath) == pytest.approx(estimate, rel=0.05)


# ----------------------------------------------------- hf_renormalization


def test_hf_renormalization_identity_without_modes(bath5):
    assert hf_renormalization(bath5) == (1.0, 0.0)


def test_hf_renormalization_example_value():
    # choose alpha so the quadrature reorganization is exactly 10 meV
    w0, gam = 180.0, 9.0
    unit = VibrationalBath(
        lambda0=0.0, omega_c=90.0, temperature=300.0, hf_modes=((1.0, w0, gam),)
    )
    alpha = 10.0 / reorganization_energy(unit)
    bath = VibrationalBath(
        lambda0=0.0, omega_c=90.0, temperature=300.0, hf_modes=((alpha, w0, gam),)
    )
    kappa_h, lambda_h = hf_renormalization(bath)
    assert lambda_h == pytest.approx(10.0, rel=1e-9)
    assert kappa_h == pytest.approx(math.exp(-10.0 / 360.0), rel=1e-6)


def test_hf_renormalization_two_identical_modes():
    mode = (2e-5, 180.0, 9.0)
    one = VibrationalBath(lambda0=0.0, omega_c=90.0, temperature=300.0, hf_modes=(mode,))
    two = VibrationalBath(
        lambda0=0.0, omega_c=90.0, temperature=300.0, hf_modes=(mode, mode)
    )
    k1, l1 = hf_renormalization(one)
    k2, l2 = hf_renormalization(two)
    assert k2 == pytest.approx(k1**2, rel=1e-12)
    assert l2 == pytest.approx(2 * l1, rel=1e-12)


# -------------------------------------------------- phonon propagator, kappa0


def test_kappa0_zero_temperature_closed_form():
    bath = VibrationalBath(lambda0=5.0, omega_c=90.0, temperature=0.0)
    assert kappa0(bath) == pytest.approx(math.exp(-5.0 / 360.0), abs=1e-10)


def test_kappa0_room_temperature_frozen_values(bath5):
    assert kappa0(bath5) == pytest.approx(KAPPA0_300K_LAM5, abs=1e-9)
    b50 = VibrationalBath(lambda0=50.0, omega_c=90.0, temperature=300.0)
    assert kappa0(b50) == pytest.approx(KAPPA0_300K_LAM50, abs=1e-9)


def test_kappa0_monotone_in_temperature_and_coupling():
    temps = [0.0, 150.0, 300.0]
    ks = [kappa0(VibrationalBath(5.0, 90.0, t)) for t in temps]
    assert ks[0] > ks[1] > ks[2]
    lams = [5.0, 20.0, 50.0]
    ks = [kappa0(VibrationalBath(lam, 90.0, 300.0)) for lam in lams]
    assert ks[0] > ks[1] > ks[2]
    assert all(0.0 < k <= 1.0 for k in ks)


def test_phi_zero_time_is_real(bath5):
    assert phonon_propagator(0.0, bath5).imag == 0.0


def test_tabulated_phi_matches_adaptive_quadrature(bath5, phonon5):
    # 1e-6 absolute on phi (|phi(0)| ~ 3e-2) is dominated by the time-grid
    # interpolation near the fast initial decay and is negligible downstream
    for t in [0.0, 0.002, 0.01, 0.05, 0.2, 1.0, 5.0]:
        ref = phonon_propagator(t, bath5)
        tab = complex(phonon5.phi_at(t))
        assert abs(ref - tab) < 1e-6


def test_phi_tail_decays_in_windows(phonon5):
    absphi = np.abs(phonon5.phi_tab)
    t = phonon5.t_grid
    # window maxima over successive decades must decrease
    edges = [0.05, 0.5, 5.0, phonon5.t_max]
    maxima = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        sel = (t >= lo) & (t <= hi)
        maxima.append(absphi[sel].max())
    assert maxima[0] > maxima[1] > maxima[2]
    assert absphi[-1] < 1e-7 * absphi[0]


def test_kappa0_consistency_of_tabulation(phonon5, bath5):
    assert phonon5.kappa0 == pytest.approx(math.exp(-0.5 * phonon5.phi_tab[0].real), abs=1e-12)
    assert phonon5.kappa0 == pytest.approx(kappa0(bath5), abs=1e-7)
    assert phonon5.kappa_total == phonon5.kappa0  # no HF modes


def test_zero_coupling_bath_shortcut():
    bath = VibrationalBath(lambda0=0.0, omega_c=90.0, temperature=300.0)
    phonon = build_phonon_functions(bath)
    assert phonon.kappa0 == 1.0
    assert np.all(phonon.phi_tab == 0)
    assert coupling_rate(17.0, phonon, "cross-op") == 0.0


# ----------------------------------------------------------- coupling_rate


def test_coupling_rate_rejects_unknown_combo(phonon5):
    with pytest.raises(ValueError):
        coupling_rate(10.0, phonon5, "both-ops")


def test_coupling_rate_tail_guard(phonon5):
    with pytest.raises(ValueError):
        coupling_rate(10.0, phonon5, "cross-op", tail_tol=1e-30)


def test_coupling_rate_detailed_balance_weak_coupling():
    bath = VibrationalBath(lambda0=0.05, omega_c=90.0, temperature=300.0)
    phonon = build_phonon_functions(bath)
    beta = 1.0 / (KB * 300.0)
    for w in [10.0, 35.0, 60.0]:
        kp = coupling_rate(w, phonon, "cross-op")
        km = coupling_rate(-w, phonon, "cross-op")
        assert km.real / kp.real == pytest.approx(math.exp(-beta * w), rel=1e-3)


def test_coupling_rate_weak_limit_one_phonon_rate():
    bath = VibrationalBath(lambda0=0.05, omega_c=90.0, temperature=300.0)
    phonon = build_phonon_functions(bath)
    beta = 1.0 / (KB * 300.0)
    for w in [15.0, 35.0, 70.0]:
        n = 1.0 / math.expm1(beta * w)
        pred = (
            math.pi
            * spectral_density(w, bath)
            * (n + 1.0)
            / (HBAR * w**2)
            * phonon.kappa0**2
        )
        got = coupling_rate(w, phonon, "cross-op").real
        assert got == pytest.approx(pred, rel=0.02)
        # same-op combo flips the sign of the first-order term
        assert coupling_rate(w, phonon, "same-op").real == pytest.approx(-pred, rel=0.02)


def test_coupling_rate_zero_frequency_positive(phonon5):
    bath0 = VibrationalBath(lambda0=5.0, omega_c=90.0, temperature=0.0)
    phonon0 = build_phonon_functions(bath0)
    assert coupling_rate(0.0, phonon0, "cross-op").real >= 0.0
    assert coupling_rate(0.0, phonon5, "cross-op").real > 0.0
