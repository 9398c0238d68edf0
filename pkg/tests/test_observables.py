import math

import numpy as np
import pytest
from scipy.special import erfc

from dimercorr.constants import HBAR
from dimercorr.dynamics import Propagator
from dimercorr.geometry import DimerGeometry
from dimercorr.liouvillian import SystemConfig, assemble
from dimercorr.observables import (
    AbsorptionSpectrum,
    absorption_spectrum,
    convolve_instrument_response,
    detection_operators,
    directional_intensity,
    dominant_frequency,
    g2_curve,
    g2_rate_model_slope,
    g2_zero_delay,
    sphere_quadrature,
    spectrum_peaks,
    total_intensity,
)
from dimercorr.vibrational import VibrationalBath, build_phonon_functions

BATH = VibrationalBath(5.0, 90.0, 300.0)

H_GEOMETRY = DimerGeometry(
    mu1=(10.0, 0.0, 0.0), mu2=(10.0, 0.0, 0.0), r_vec=(0.0, 0.0, 2.0)
)
J_GEOMETRY = DimerGeometry(
    mu1=(0.0, 0.0, 10.0), mu2=(0.0, 0.0, 10.0), r_vec=(0.0, 0.0, 2.0)
)
ORTHOGONAL_GEOMETRY = DimerGeometry(
    mu1=(10.0, 0.0, 0.0), mu2=(0.0, 10.0, 0.0), r_vec=(0.0, 0.0, 2.0)
)
TILTED_GEOMETRY = DimerGeometry(
    mu1=(10.0, 0.0, 0.0),
    mu2=(10.0 * math.cos(math.pi / 4), 10.0 * math.sin(math.pi / 4), 0.0),
    r_vec=(0.0, 0.0, 2.0),
)


@pytest.fixture(scope="module")
def phonon():
    return build_phonon_functions(BATH)


def _prepared(geometry, phonon, **config_kwargs):
    bundle = assemble(
        SystemConfig(geometry=geometry, bath=BATH, **config_kwargs), phonon=phonon
    )
    propagator = Propagator(bundle.matrix)
    return bundle, propagator, propagator.steady_state(check_uniqueness=False)


@pytest.fixture(scope="module")
def h_system(phonon):
    return _prepared(H_GEOMETRY, phonon)


@pytest.fixture(scope="module")
def j_system(phonon):
    return _prepared(J_GEOMETRY, phonon)


@pytest.fixture(scope="module")
def orthogonal_system(phonon):
    return _prepared(ORTHOGONAL_GEOMETRY, phonon)


@pytest.fixture(scope="module")
def tilted_system(phonon):
    return _prepared(TILTED_GEOMETRY, phonon)


# ------------------------------------------------------------- intensities


def test_sphere_quadrature_weights_close():
    dirs, wts = sphere_quadrature()
    assert wts.sum() == pytest.approx(4.0 * math.pi, rel=1e-12)
    assert np.allclose(np.linalg.norm(dirs, axis=1), 1.0)


@pytest.mark.parametrize(
    "system_name", ["h_system", "j_system", "orthogonal_system", "tilted_system"]
)
def test_directional_intensity_integrates_to_total(system_name, request):
    bundle, _, rho = request.getfixturevalue(system_name)
    dirs, wts = sphere_quadrature()
    integral = sum(
        w * directional_intensity(bundle, rho, d) for d, w in zip(dirs, wts)
    )
    assert integral == pytest.approx(total_intensity(bundle, rho), rel=1e-9)


def test_total_intensity_counts_excitations(h_system):
    bundle, _, _ = h_system
    # one fully excited emitter with no coherence emits exactly 1 (in
    # units of the reference rate); the doubly excited state exactly 2
    rho_eg = np.zeros((4, 4), dtype=complex)
    rho_eg[1, 1] = 1.0
    assert total_intensity(bundle, rho_eg) == pytest.approx(1.0, rel=1e-12)
    rho_ee = np.zeros((4, 4), dtype=complex)
    rho_ee[3, 3] = 1.0
    assert total_intensity(bundle, rho_ee) == pytest.approx(2.0, rel=1e-12)


# -------------------------------------------------- zero-delay consistency


@pytest.mark.parametrize(
    "system_name", ["h_system", "j_system", "orthogonal_system", "tilted_system"]
)
def test_zero_delay_overlap_form_matches_curve(system_name, request):
    bundle, propagator, rho = request.getfixturevalue(system_name)
    rng = np.random.default_rng(7)
    directions = list(rng.normal(size=(12, 3))) + [
        np.array([0.0, 0.0, 1.0]),
        np.array([0.0, 1.0, 0.0]),
        np.array([1.0, 0.0, 0.0]),
    ]
    checked = 0
    for q in directions:
        q = q / np.linalg.norm(q)
        try:
            exact = g2_zero_delay(bundle, rho, q)
        except ValueError:
            with pytest.raises(ValueError, match="dark"):
                g2_curve(
                    bundle, np.array([0.0]), q, rho_ss=rho, propagator=propagator
                )
            continue
        curve = g2_curve(
            bundle, np.array([0.0]), q, rho_ss=rho, propagator=propagator
        )
        assert curve.values[0] == pytest.approx(exact, rel=1e-10, abs=1e-12)
        checked += 1
    assert checked >= 12


def test_cross_direction_zero_delay_symmetric(orthogonal_system):
    bundle, propagator, rho = orthogonal_system
    q1 = np.array([0.0, 0.0, 1.0])
    q2 = np.array([1.0, 1.0, 1.0]) / math.sqrt(3.0)
    ab = g2_zero_delay(bundle, rho, q1, q2)
    ba = g2_zero_delay(bundle, rho, q2, q1)
    assert ab == pytest.approx(ba, rel=1e-12)
    curve = g2_curve(
        bundle, np.array([0.0]), q1, q2, rho_ss=rho, propagator=propagator
    )
    assert curve.values[0] == pytest.approx(ab, rel=1e-10)


def test_parallel_dimer_g2_direction_independent(h_system):
    bundle, _, rho = h_system
    rng = np.random.default_rng(11)
    values = []
    for q in rng.normal(size=(5, 3)):
        q = q / np.linalg.norm(q)
        if abs(q[0]) > 0.99:  # nearly along the dipoles: nearly dark
            continue
        values.append(g2_zero_delay(bundle, rho, q))
    assert np.ptp(values) < 1e-10 * values[0]


def test_independent_emitters_give_one_half(phonon):
    # isotropic pumping of perpendicular dipoles keeps the two emitters
    # statistically independent, so the summed field has g2(0) = 1/2
    bundle, _, rho = _prepared(
        ORTHOGONAL_GEOMETRY, phonon, pump_scheme="isotropic"
    )
    g2 = g2_zero_delay(bundle, rho, np.array([0.0, 0.0, 1.0]))
    assert g2 == pytest.approx(0.5, abs=1e-9)
    # detection along one dipole sees a single emitter: full antibunching
    g2_single = g2_zero_delay(bundle, rho, np.array([1.0, 0.0, 0.0]))
    assert abs(g2_single) < 1e-12


def test_dark_direction_raises(h_system):
    bundle, propagator, rho = h_system
    along_dipoles = np.array([1.0, 0.0, 0.0])
    with pytest.raises(ValueError, match="dark"):
        g2_zero_delay(bundle, rho, along_dipoles)
    with pytest.raises(ValueError, match="dark"):
        g2_curve(
            bundle,
            np.array([0.0, 1.0]),
            along_dipoles,
            rho_ss=rho,
            propagator=propagator,
        )


def test_negative_delays_rejected(h_system):
    bundle, propagator, rho = h_system
    with pytest.raises(ValueError, match="non-negative"):
        g2_curve(
            bundle,
            np.array([-1.0, 0.0]),
            np.array([0.0, 0.0, 1.0]),
            rho_ss=rho,
            propagator=propagator,
        )


# ----------------------------------------------------- long-time behaviour


@pytest.mark.parametrize("system_name", ["h_system", "j_system"])
def test_g2_curve_approaches_one(system_name, request):
    bundle, propagator, rho = request.getfixturevalue(system_name)
    direction = (
        np.array([0.0, 0.0, 1.0])
        if system_name == "h_system"
        else np.array([1.0, 0.0, 0.0])
    )
    t_end = 20.0 / bundle.rates.gamma_ref
    curve = g2_curve(
        bundle,
        np.array([0.0, t_end]),
        direction,
        rho_ss=rho,
        propagator=propagator,
    )
    assert curve.values[-1] == pytest.approx(1.0, abs=1e-9)


# --------------------------------------------------------- rate-model slope


def test_rate_model_slope_matches_numerical_derivative(orthogonal_system):
    bundle, propagator, rho = orthogonal_system
    gamma = bundle.rates.gamma_ref
    # detection along the pumped superposition recovers (anti-dip), along
    # the orthogonal one it decays; values from the independent four-level
    # rate-equation solution of this configuration
    frozen = {
        (1.0, -1.0, 0.0): +0.787915,
        (1.0, 1.0, 0.0): -1.651561,
    }
    for q, expected in frozen.items():
        qv = np.asarray(q) / math.sqrt(2.0)
        model = g2_rate_model_slope(bundle, rho, qv) / gamma
        h = 1e-3 / gamma
        c = g2_curve(
            bundle,
            np.array([0.0, h, 2 * h]),
            qv,
            rho_ss=rho,
            propagator=propagator,
        )
        numeric = (-3 * c.values[0] + 4 * c.values[1] - c.values[2]) / (2 * h) / gamma
        assert model == pytest.approx(expected, rel=1e-4)
        assert numeric == pytest.approx(model, rel=1e-4)


def test_rate_model_slope_requires_mode_pump(phonon):
    bundle, _, rho = _prepared(
        ORTHOGONAL_GEOMETRY, phonon, pump_scheme="isotropic"
    )
    with pytest.raises(ValueError, match="mode pump"):
        g2_rate_model_slope(bundle, rho, np.array([1.0, -1.0, 0.0]))


def test_rate_model_slope_requires_single_bright_polarization(orthogonal_system):
    bundle, _, rho = orthogonal_system
    # along z both perpendicular dipoles are bright in different
    # polarizations, so no single collective state is detected
    with pytest.raises(ValueError, match="exactly one bright"):
        g2_rate_model_slope(bundle, rho, np.array([0.0, 0.0, 1.0]))


# ------------------------------------------------------ instrument response


def _analytic_blur(taus, amplitude, tau0, fwhm):
    """Gaussian blur of 1 - amplitude*exp(-|t|/tau0), closed form."""
    sigma = fwhm / (2.0 * math.sqrt(2.0 * math.log(2.0)))
    t = np.asarray(taus, dtype=float)
    pref = 0.5 * math.exp(sigma**2 / (2.0 * tau0**2))
    left = np.exp(-t / tau0) * erfc((sigma / tau0 - t / sigma) / math.sqrt(2.0))
    right = np.exp(t / tau0) * erfc((sigma / tau0 + t / sigma) / math.sqrt(2.0))
    return 1.0 - amplitude * pref * (left + right)


def test_instrument_response_matches_closed_form():
    taus = np.linspace(0.0, 2000.0, 4001)
    curve_values = 1.0 - 0.6 * np.exp(-taus / 150.0)
    from dimercorr.observables import CorrelationCurve

    curve = CorrelationCurve(taus=taus, values=curve_values)
    blurred = convolve_instrument_response(curve, fwhm_ps=100.0)
    keep = blurred.taus <= 1500.0
    reference = _analytic_blur(blurred.taus[keep], 0.6, 150.0, 100.0)
    assert np.abs(blurred.values[keep] - reference).max() < 3e-4


def test_instrument_response_reduces_dip_monotonically():
    taus = np.linspace(0.0, 2000.0, 4001)
    from dimercorr.observables import CorrelationCurve

    curve = CorrelationCurve(taus=taus, values=1.0 - 0.6 * np.exp(-taus / 150.0))
    depths = []
    for fwhm in (50.0, 100.0, 200.0):
        blurred = convolve_instrument_response(curve, fwhm_ps=fwhm)
        depths.append(1.0 - blurred.values.min())
    assert depths[0] > depths[1] > depths[2]
    assert all(0.0 < d < 0.6 for d in depths)


def test_instrument_response_preserves_asymptote():
    taus = np.linspace(0.0, 2000.0, 2001)
    from dimercorr.observables import CorrelationCurve

    curve = CorrelationCurve(taus=taus, values=np.ones_like(taus))
    blurred = convolve_instrument_response(curve, fwhm_ps=120.0)
    assert np.abs(blurred.values - 1.0).max() < 1e-12


def test_instrument_response_rejects_bad_width(h_system):
    from dimercorr.observables import CorrelationCurve

    curve = CorrelationCurve(
        taus=np.linspace(0.0, 10.0, 11), values=np.ones(11)
    )
    with pytest.raises(ValueError, match="positive"):
        convolve_instrument_response(curve, fwhm_ps=0.0)


# ------------------------------------------------------- frequency analysis


def test_dominant_frequency_on_synthetic_signal():
    ts = np.linspace(0.0, 40.0, 600)
    omega0 = 3.7
    signal = 0.8 + 0.3 * np.cos(omega0 * ts) * np.exp(-ts / 25.0)
    assert dominant_frequency(ts, signal) == pytest.approx(omega0, rel=1e-3)


def test_dominant_frequency_rejects_bad_grids():
    with pytest.raises(ValueError, match="uniform"):
        dominant_frequency(np.geomspace(0.1, 10.0, 50), np.ones(50))
    with pytest.raises(ValueError, match="uniform"):
        dominant_frequency(np.linspace(0.0, 1.0, 5), np.ones(5))


def test_g2_beats_at_renormalized_coupling(tilted_system):
    bundle, propagator, rho = tilted_system
    taus = np.arange(0.0, 6.0, 0.05)
    # detection transverse to the first dipole isolates the second
    # emitter, whose emission beats at the dressed level splitting
    curve = g2_curve(
        bundle,
        taus,
        np.array([1.0, 0.0, 0.0]),
        rho_ss=rho,
        propagator=propagator,
    )
    measured = dominant_frequency(taus, curve.values)
    assert measured == pytest.approx(bundle.rates.j_prime / HBAR, rel=5e-3)


# ------------------------------------------------------------- absorption


def _rescaled_tilted_geometry():
    # shrink the separation until the natural coupling reaches 36.11 meV
    scale = (5.516873 / 36.11) ** (1.0 / 3.0)
    return DimerGeometry(
        mu1=(10.0, 0.0, 0.0),
        mu2=(10.0 * math.cos(math.pi / 4), 10.0 * math.sin(math.pi / 4), 0.0),
        r_vec=(0.0, 0.0, 2.0 * scale),
    )


def test_absorption_rejects_unresolvable_step(phonon):
    bundle = assemble(
        SystemConfig(geometry=_rescaled_tilted_geometry(), bath=BATH),
        phonon=phonon,
    )
    with pytest.raises(ValueError, match="resolve"):
        absorption_spectrum(bundle, dt=0.01)


@pytest.mark.parametrize(
    "lambda0, expected_split",
    [(5.0, 34.974), (50.0, 25.960)],
)
def test_absorption_peaks_at_dressed_exciton_lines(lambda0, expected_split):
    bath = VibrationalBath(lambda0, 90.0, 300.0)
    bundle = assemble(
        SystemConfig(
            geometry=_rescaled_tilted_geometry(), bath=bath, lamb_shifts=False
        ),
        phonon=build_phonon_functions(bath),
    )
    assert bundle.rates.forster_j == pytest.approx(36.11, abs=0.01)
    spectrum = absorption_spectrum(bundle)
    peaks = spectrum_peaks(spectrum, n_peaks=2)
    assert len(peaks) == 2
    (pos_low, _), (pos_high, _) = peaks
    split = pos_high - pos_low
    assert split == pytest.approx(expected_split, abs=0.05)
    # the line centers sit at -lambda_total -/+ J'/2
    lam = bundle.rates.lambda_total
    jp = bundle.rates.j_prime
    assert pos_low == pytest.approx(-lam - jp / 2.0, abs=0.05)
    assert pos_high == pytest.approx(-lam + jp / 2.0, abs=0.05)


def test_spectrum_peaks_on_synthetic_lines():
    omega = np.arange(-100.0, 50.0 + 0.125, 0.25)
    lorentz = lambda w, w0, hw: 1.0 / (1.0 + ((w - w0) / hw) ** 2)  # noqa: E731
    values = 2.0 * lorentz(omega, -60.0, 3.0) + lorentz(omega, -20.0, 4.0)
    spectrum = AbsorptionSpectrum(omega=omega, values=values, grid_step=0.25)
    peaks = spectrum_peaks(spectrum, n_peaks=2)
    assert peaks[0][0] == pytest.approx(-60.0, abs=0.01)
    assert peaks[1][0] == pytest.approx(-20.0, abs=0.01)
    # each height includes the tail of the other line at its center
    assert peaks[0][1] == pytest.approx(2.0 + lorentz(-60.0, -20.0, 4.0), rel=1e-3)
    assert peaks[1][1] == pytest.approx(1.0 + 2.0 * lorentz(-20.0, -60.0, 3.0), rel=1e-3)
