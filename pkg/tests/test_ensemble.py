import math

import numpy as np
import pytest

from dimercorr.dynamics import Propagator
from dimercorr.ensemble import (
    DisorderSpec,
    ensemble_g2,
    sample_detection,
    sample_vmf,
    uniform_direction,
)
from dimercorr.geometry import DimerGeometry
from dimercorr.liouvillian import SystemConfig, assemble
from dimercorr.observables import g2_curve
from dimercorr.vibrational import VibrationalBath, build_phonon_functions

BATH = VibrationalBath(5.0, 90.0, 300.0)
H_GEOMETRY = DimerGeometry(
    mu1=(10.0, 0.0, 0.0), mu2=(10.0, 0.0, 0.0), r_vec=(0.0, 0.0, 2.0)
)


@pytest.fixture(scope="module")
def phonon():
    return build_phonon_functions(BATH)


def vmf_cap_probability(kappa: float, angle: float) -> float:
    """Exact probability of a draw within ``angle`` of the mean."""
    c = math.cos(angle)
    return (math.exp(kappa) - math.exp(kappa * c)) / (
        math.exp(kappa) - math.exp(-kappa)
    )


# ------------------------------------------------------------ vMF sampling


def test_vmf_high_concentration_limit():
    rng = np.random.default_rng(1)
    mean = np.array([0.0, 0.0, 1.0])
    for _ in range(1000):
        v = sample_vmf(mean, 1e6, rng)
        assert math.acos(min(1.0, float(v @ mean))) < 0.01


def test_vmf_cap_fraction_matches_cdf():
    rng = np.random.default_rng(2)
    mean = np.array([1.0, 2.0, -1.0]) / math.sqrt(6.0)
    kappa, angle, n = 10.0, math.radians(35.0), 100_000
    cos_cut = math.cos(angle)
    hits = sum(float(sample_vmf(mean, kappa, rng) @ mean) > cos_cut for _ in range(n))
    p = vmf_cap_probability(kappa, angle)
    assert p == pytest.approx(0.8361, abs=2e-4)  # frozen exact value
    sigma = math.sqrt(p * (1 - p) / n)
    assert abs(hits / n - p) < 3 * sigma


def test_vmf_isotropic_limit():
    rng = np.random.default_rng(3)
    mean = np.array([0.0, 0.0, 1.0])
    n = 100_000
    total = np.zeros(3)
    for _ in range(n):
        total += sample_vmf(mean, 1e-6, rng)
    assert np.linalg.norm(total / n) < 0.012  # ~3.8 sigma of |mean| under isotropy


def test_vmf_rejects_bad_kappa():
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError, match="positive"):
        sample_vmf(np.array([0.0, 0.0, 1.0]), 0.0, rng)


# ------------------------------------------------------- detection schemes


def test_fixed_detection_returns_configured_pair():
    spec = DisorderSpec(
        kappa_orient=10.0,
        n_samples=1,
        seed=0,
        detection_direction=(0.0, 0.0, 1.0),
        detection_direction2=(0.0, 1.0, 0.0),
    )
    rng = np.random.default_rng(0)
    q1, q2 = sample_detection(spec, rng)
    assert np.array_equal(q1, [0.0, 0.0, 1.0])
    assert np.array_equal(q2, [0.0, 1.0, 0.0])


def test_localized_detection_cone_statistics():
    spec = DisorderSpec(
        kappa_orient=10.0,
        n_samples=1,
        seed=0,
        detection_scheme="first-uniform-second-vmf",
        kappa_detect=50.0,
    )
    rng = np.random.default_rng(4)
    n = 20_000
    angle = math.radians(15.0)
    cos_cut = math.cos(angle)
    hits = 0
    for _ in range(n):
        q1, q2 = sample_detection(spec, rng)
        hits += float(q1 @ q2) > cos_cut
    p = vmf_cap_probability(50.0, angle)
    sigma = math.sqrt(p * (1 - p) / n)
    assert abs(hits / n - p) < 3 * sigma


def test_uniform_detection_directions_uncorrelated():
    spec = DisorderSpec(
        kappa_orient=10.0, n_samples=1, seed=0, detection_scheme="both-uniform"
    )
    rng = np.random.default_rng(5)
    n = 100_000
    total = 0.0
    for _ in range(n):
        q1, q2 = sample_detection(spec, rng)
        total += float(q1 @ q2)
    # q1.q2 has zero mean and variance 1/3 for independent isotropic pairs
    assert abs(total / n) < 3 * math.sqrt(1.0 / (3 * n))


def test_spec_validation():
    with pytest.raises(ValueError, match="kappa_orient"):
        DisorderSpec(kappa_orient=0.0, n_samples=10, seed=0)
    with pytest.raises(ValueError, match="n_samples"):
        DisorderSpec(kappa_orient=1.0, n_samples=0, seed=0)
    with pytest.raises(ValueError, match="detection_scheme"):
        DisorderSpec(
            kappa_orient=1.0, n_samples=1, seed=0, detection_scheme="cone"
        )
    with pytest.raises(ValueError, match="kappa_detect"):
        DisorderSpec(
            kappa_orient=1.0,
            n_samples=1,
            seed=0,
            detection_scheme="first-uniform-second-vmf",
            kappa_detect=-1.0,
        )
    with pytest.raises(ValueError, match="disorder_target"):
        DisorderSpec(
            kappa_orient=1.0, n_samples=1, seed=0, disorder_target="first"
        )


def test_uniform_direction_is_normalized():
    rng = np.random.default_rng(6)
    for _ in range(100):
        assert np.linalg.norm(uniform_direction(rng)) == pytest.approx(1.0)


# ------------------------------------------------------- ensemble averaging


def h_config():
    return SystemConfig(geometry=H_GEOMETRY, bath=BATH)


def test_degenerate_ensemble_matches_single_configuration(phonon):
    taus = np.linspace(0.0, 500.0, 6)
    spec = DisorderSpec(kappa_orient=1e9, n_samples=1, seed=123)
    result = ensemble_g2(h_config(), spec, taus, phonon=phonon)
    bundle = assemble(h_config(), phonon=phonon)
    single = g2_curve(bundle, taus, np.array([0.0, 0.0, 1.0]))
    assert result.n_accepted == 1
    assert result.n_failed == 0
    assert np.abs(result.mean - single.values).max() < 1e-6
    assert np.all(result.standard_error == 0.0)


def test_ensemble_reproducible_and_schedule_independent(phonon):
    taus = np.array([0.0, 100.0])
    spec = DisorderSpec(kappa_orient=10.0, n_samples=48, seed=777)
    a = ensemble_g2(h_config(), spec, taus, phonon=phonon)
    b = ensemble_g2(h_config(), spec, taus, phonon=phonon)
    c = ensemble_g2(h_config(), spec, taus, phonon=phonon, threads=3)
    assert np.array_equal(a.mean, b.mean)
    assert np.array_equal(a.standard_error, b.standard_error)
    assert np.array_equal(a.mean, c.mean)
    assert np.array_equal(a.standard_error, c.standard_error)
    assert a.config_hash == b.config_hash == c.config_hash
    different = ensemble_g2(
        h_config(),
        DisorderSpec(kappa_orient=10.0, n_samples=48, seed=778),
        taus,
        phonon=phonon,
    )
    assert not np.array_equal(a.mean, different.mean)
    assert different.config_hash != a.config_hash


def test_orientation_disorder_shrinks_zero_delay_feature(phonon):
    taus = np.array([0.0])
    bundle = assemble(h_config(), phonon=phonon)
    ordered = g2_curve(bundle, taus, np.array([0.0, 0.0, 1.0])).values[0]
    spec = DisorderSpec(kappa_orient=10.0, n_samples=200, seed=42)
    result = ensemble_g2(h_config(), spec, taus, phonon=phonon)
    assert result.n_failed == 0
    # the zero-delay feature sits above 1 for this arrangement and
    # averaging over orientations pulls it toward 1
    assert 1.0 < result.mean[0] < ordered
    assert result.standard_error[0] > 0.0


def test_standard_error_scales_inverse_root_n(phonon):
    taus = np.array([0.0])
    errors = {}
    for n in (100, 1000, 10000):
        spec = DisorderSpec(kappa_orient=10.0, n_samples=n, seed=99)
        result = ensemble_g2(h_config(), spec, taus, phonon=phonon)
        errors[n] = float(result.standard_error[0])
    expected = math.sqrt(10.0)
    assert errors[100] / errors[1000] == pytest.approx(expected, rel=0.2)
    assert errors[1000] / errors[10000] == pytest.approx(expected, rel=0.2)


def test_failure_accounting_and_abort(phonon, monkeypatch):
    import dimercorr.ensemble as ens

    taus = np.array([0.0])
    original = ens._single_sample

    def flaky(base_config, spec, phonon_fns, grid, index):
        if index == 3:
            raise RuntimeError("synthetic failure")
        return original(base_config, spec, phonon_fns, grid, index)

    monkeypatch.setattr(ens, "_single_sample", flaky)
    spec = DisorderSpec(kappa_orient=10.0, n_samples=40, seed=5)
    result = ensemble_g2(h_config(), spec, taus, phonon=phonon)
    assert result.n_failed == 1
    assert result.n_accepted == 39

    def broken(base_config, spec, phonon_fns, grid, index):
        if index % 2 == 0:
            raise RuntimeError("synthetic failure")
        return original(base_config, spec, phonon_fns, grid, index)

    monkeypatch.setattr(ens, "_single_sample", broken)
    with pytest.raises(RuntimeError, match="failed"):
        ensemble_g2(h_config(), spec, taus, phonon=phonon)


def test_both_dipole_disorder_differs_from_single(phonon):
    taus = np.array([0.0])
    second = ensemble_g2(
        h_config(),
        DisorderSpec(kappa_orient=10.0, n_samples=64, seed=8),
        taus,
        phonon=phonon,
    )
    both = ensemble_g2(
        h_config(),
        DisorderSpec(
            kappa_orient=10.0, n_samples=64, seed=8, disorder_target="both"
        ),
        taus,
        phonon=phonon,
    )
    assert not np.array_equal(second.mean, both.mean)


def test_empty_grid_rejected(phonon):
    with pytest.raises(ValueError, match="empty"):
        ensemble_g2(
            h_config(),
            DisorderSpec(kappa_orient=10.0, n_samples=1, seed=0),
            np.array([]),
            phonon=phonon,
        )
