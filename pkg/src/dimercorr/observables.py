"""Detected observables: intensities, photon correlations, spectra.

Detection happens through the collective polarization modes of a
propagation direction (see :mod:`dimercorr.geometry`).  Intensities are
reported in units of the reference radiative rate; the per-direction
intensity is normalized so that its integral over the sphere equals the
total emission rate,

    I(q) = (3 / 8 pi) sum_lambda (N_q,lambda^2 / |mu_1|^2)
           <sigma+_q,lambda sigma-_q,lambda>.

Second-order correlations follow from the quantum regression theorem:

    G2(q, q', tau) = sum_ll' N_ql^2 N_q'l'^2
        Tr[ sigma+_q'l' sigma-_q'l' e^{L tau}( sigma-_ql rho sigma+_ql ) ],
    g2 = G2 / (I(q) I(q')),

evaluated as exponential sums in the generator eigenbasis.  The
absorption lineshape is the half-line Fourier transform of the
ground-state dipole correlation function dressed by the vibrational
displacement factor exp(phi(tau)); it is reported against the detuning
from the bare transition energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.signal import find_peaks

from ._kernels import oscillatory_transform
from .constants import HBAR
from .dynamics import Propagator
from .geometry import DetectionMode, ModeOperators, mode_operators
from .hilbert import DIM, basis_state, site_operator
from .liouvillian import LiouvillianBundle

__all__ = [
    "AbsorptionSpectrum",
    "CorrelationCurve",
    "absorption_spectrum",
    "convolve_instrument_response",
    "detection_operators",
    "directional_intensity",
    "dominant_frequency",
    "g2_curve",
    "g2_numerator_and_singles",
    "g2_rate_model_slope",
    "g2_zero_delay",
    "sphere_quadrature",
    "spectrum_peaks",
    "total_intensity",
]


@dataclass(frozen=True)
class CorrelationCurve:
    """A second-order correlation curve g2(tau).

    Attributes:
        taus: Delay grid (ps), non-negative.
        values: g2 at each delay (dimensionless).
    """

    taus: NDArray
    values: NDArray


@dataclass(frozen=True)
class AbsorptionSpectrum:
    """Absorption lineshape against detuning from the bare transition.

    Attributes:
        omega: Detuning grid (meV, relative to the bare site energy).
        values: Lineshape (arbitrary common units, real).
        grid_step: Spacing of ``omega`` (meV).
    """

    omega: NDArray
    values: NDArray
    grid_step: float


# ---------------------------------------------------------------- intensities


def detection_operators(
    bundle: LiouvillianBundle, direction
) -> ModeOperators:
    """Collective mode operators for a detection direction."""
    mode = DetectionMode.from_direction(np.asarray(direction, dtype=float))
    return mode_operators(
        bundle.config.geometry,
        mode,
        include_phases=bundle.config.propagation_phases,
    )


def _weighted_projector(ops: ModeOperators, mu_sq: float) -> NDArray:
    """sum_lambda N_lambda^2 sigma+ sigma- / |mu_1|^2 (both polarizations)."""
    out = np.zeros((DIM, DIM), dtype=complex)
    for n, sp in zip(ops.norms, ops.sigma_plus):
        out += (n**2 / mu_sq) * (np.asarray(sp) @ np.asarray(sp).conj().T)
    return out


def directional_intensity(bundle: LiouvillianBundle, rho: NDArray, direction) -> float:
    """Emission rate per solid angle along ``direction`` (gamma_ref units)."""
    mu_sq = float(np.linalg.norm(bundle.config.geometry.mu1)) ** 2
    ops = detection_operators(bundle, direction)
    proj = _weighted_projector(ops, mu_sq)
    return float((3.0 / (8.0 * math.pi)) * np.trace(proj @ rho).real)


def total_intensity(bundle: LiouvillianBundle, rho: NDArray) -> float:
    """Total emission rate in units of the reference radiative rate.

    Equals the sphere integral of :func:`directional_intensity` exactly.
    """
    geom = bundle.config.geometry
    mu1, mu2 = np.linalg.norm(geom.mu1), np.linalg.norm(geom.mu2)
    r1, r2 = 1.0, (mu2 / mu1) ** 2
    alignment = geom.alignment_factor
    pops = np.real(np.diag(rho))  # gg, eg, ge, ee
    cross = 2.0 * np.real(rho[1, 2])  # <eg| rho |ge> + c.c.
    return float(
        r1 * pops[1]
        + r2 * pops[2]
        + (r1 + r2) * pops[3]
        + math.sqrt(r1 * r2) * alignment * cross
    )


def sphere_quadrature(n_polar: int = 6, n_azimuth: int = 12):
    """Product quadrature on the unit sphere: directions (N, 3), weights (N,).

    Gauss-Legendre in the polar cosine and a uniform azimuthal rule; the
    weights sum to 4 pi, and the rule is exact for the quadratic
    integrands of the directional intensity already at small orders.
    """
    nodes, weights = np.polynomial.legendre.leggauss(n_polar)
    phis = 2.0 * math.pi * np.arange(n_azimuth) / n_azimuth
    dirs = []
    wts = []
    for c, w in zip(nodes, weights):
        s = math.sqrt(1.0 - c * c)
        for phi in phis:
            dirs.append((s * math.cos(phi), s * math.sin(phi), c))
            wts.append(w * 2.0 * math.pi / n_azimuth)
    return np.asarray(dirs), np.asarray(wts)


# ------------------------------------------------------------- correlations


def _steady_and_propagator(
    bundle: LiouvillianBundle,
    rho_ss: NDArray | None,
    propagator: Propagator | None,
):
    if propagator is None:
        propagator = Propagator(bundle.matrix)
    if rho_ss is None:
        rho_ss = propagator.steady_state(check_uniqueness=False)
    return rho_ss, propagator


def g2_numerator_and_singles(
    bundle: LiouvillianBundle,
    taus: NDArray,
    direction,
    direction2=None,
    *,
    rho_ss: NDArray | None = None,
    propagator: Propagator | None = None,
) -> tuple[NDArray, float, float]:
    """Unnormalized coincidence curve and the two singles rates.

    Returns (G2(tau), I1, I2) in squared-reference-rate units so
    ensemble averages can combine coincidences and singles separately
    before normalizing.  Dark directions are permitted here (the
    numerator and the corresponding singles rate are simply zero).
    """
    taus = np.asarray(taus, dtype=float)
    if taus.size and taus.min() < 0:
        raise ValueError("delays must be non-negative")
    rho_ss, propagator = _steady_and_propagator(bundle, rho_ss, propagator)

    mu_sq = float(np.linalg.norm(bundle.config.geometry.mu1)) ** 2
    ops1 = detection_operators(bundle, direction)
    ops2 = (
        ops1
        if direction2 is None
        else detection_operators(bundle, direction2)
    )

    intensity1 = float(
        np.trace(_weighted_projector(ops1, mu_sq) @ rho_ss).real
    )
    proj2 = _weighted_projector(ops2, mu_sq)
    intensity2 = float(np.trace(proj2 @ rho_ss).real)

    seed = np.zeros((DIM, DIM), dtype=complex)
    for n, sm in zip(ops1.norms, ops1.sigma_minus):
        sm = np.asarray(sm)
        seed += (n**2 / mu_sq) * (sm @ rho_ss @ sm.conj().T)

    numer = propagator.expectation_curve(proj2, seed, taus).real
    return numer, intensity1, intensity2


def g2_curve(
    bundle: LiouvillianBundle,
    taus: NDArray,
    direction,
    direction2=None,
    *,
    rho_ss: NDArray | None = None,
    propagator: Propagator | None = None,
) -> CorrelationCurve:
    """Normalized two-time photon correlation between two directions.

    ``direction`` is the first detected photon, ``direction2`` the second
    (defaults to the first).  Raises for optically dark directions.
    """
    numer, intensity1, intensity2 = g2_numerator_and_singles(
        bundle, taus, direction, direction2, rho_ss=rho_ss, propagator=propagator
    )
    if intensity1 <= 0 or intensity2 <= 0:
        raise ValueError("detection direction is optically dark in this state")
    taus = np.asarray(taus, dtype=float)
    return CorrelationCurve(taus=taus, values=numer / (intensity1 * intensity2))


def g2_zero_delay(
    bundle: LiouvillianBundle,
    rho_ss: NDArray,
    direction,
    direction2=None,
) -> float:
    """Zero-delay correlation from the exact two-photon overlap form.

    The two-photon amplitude collapses to
    |<psi_g'(lambda') | psi_e(lambda)>|^2 n_ee per polarization pair, so
    no propagation is needed.
    """
    mu_sq = float(np.linalg.norm(bundle.config.geometry.mu1)) ** 2
    ops1 = detection_operators(bundle, direction)
    ops2 = (
        ops1
        if direction2 is None
        else detection_operators(bundle, direction2)
    )
    n_ee = float(rho_ss[3, 3].real)
    intensity1 = float(np.trace(_weighted_projector(ops1, mu_sq) @ rho_ss).real)
    intensity2 = float(np.trace(_weighted_projector(ops2, mu_sq) @ rho_ss).real)
    if intensity1 <= 0 or intensity2 <= 0:
        raise ValueError("detection direction is optically dark in this state")
    numer = 0.0
    for n1, psi_e in zip(ops1.norms, ops1.psi_e):
        if psi_e is None:
            continue
        for n2, psi_g in zip(ops2.norms, ops2.psi_g):
            if psi_g is None:
                continue
            overlap = np.vdot(np.asarray(psi_g), np.asarray(psi_e))
            numer += (n1**2 / mu_sq) * (n2**2 / mu_sq) * abs(overlap) ** 2
    return numer * n_ee / (intensity1 * intensity2)


def g2_rate_model_slope(
    bundle: LiouvillianBundle,
    rho_ss: NDArray,
    direction,
) -> float:
    """Initial slope of g2 from the collective-mode rate model (1/ps).

    Valid when the detection direction couples to exactly one collective
    polarization state |psi> and the pump drives the modes (not the
    sites): the detected-population balance gives

        g2'(0) = [ (u + gp |<psi|psi_pump>|^2) n_psi - d n_ee ]
                 / (n_psi + n_ee)^2,

    with the dressed site rates d (down) and u (up) of the assembled
    generator.
    """
    rates = bundle.rates
    if rates.pump_direction is None:
        raise ValueError("rate-model slope requires the mode pump scheme")
    ops = detection_operators(bundle, direction)
    bright = [
        (n, psi)
        for n, psi in zip(ops.norms, ops.psi_g)
        if psi is not None and n > 1e-9 * np.linalg.norm(bundle.config.geometry.mu1)
    ]
    if len(bright) != 1:
        raise ValueError(
            "rate-model slope needs exactly one bright detection polarization"
        )
    psi = np.asarray(bright[0][1])

    pump_ops = detection_operators(bundle, np.asarray(rates.pump_direction))
    overlap_sq = 0.0
    for weight, psi_pump in zip(rates.pump_weights, pump_ops.psi_g):
        if psi_pump is None or weight < 1e-15:
            continue
        overlap_sq += weight * abs(np.vdot(psi, np.asarray(psi_pump))) ** 2

    n_psi = float((psi.conj() @ rho_ss @ psi).real)
    n_ee = float(rho_ss[3, 3].real)
    feed = rates.site_up_rate + rates.pump_rate * overlap_sq
    return (feed * n_psi - rates.site_down_rate * n_ee) / (n_psi + n_ee) ** 2


# -------------------------------------------------- instrument response


def convolve_instrument_response(
    curve: CorrelationCurve, fwhm_ps: float
) -> CorrelationCurve:
    """Blur a correlation curve with a Gaussian timing response.

    The curve is resampled onto a uniform grid (step at most 1 ps and at
    least twenty points per response width), extended symmetrically to
    negative delays (g2(-tau) = g2(tau)) and with its asymptote (1.0)
    to the right, then convolved with a normalized Gaussian of the given
    full width at half maximum.
    """
    if fwhm_ps <= 0:
        raise ValueError("instrument response width must be positive")
    t_max = float(curve.taus.max())
    if t_max <= 0:
        raise ValueError("curve must extend to positive delays")
    dt = min(1.0, fwhm_ps / 20.0)
    n = int(math.ceil(t_max / dt)) + 1
    grid = np.arange(n) * dt
    resampled = np.interp(grid, curve.taus, curve.values)

    sigma = fwhm_ps / (2.0 * math.sqrt(2.0 * math.log(2.0)))
    radius = int(math.ceil(4.0 * sigma / dt))
    kernel = np.exp(-0.5 * ((np.arange(-radius, radius + 1) * dt) / sigma) ** 2)
    kernel /= kernel.sum()

    left = resampled[1 : radius + 1][::-1]  # reflection through tau = 0
    right = np.full(radius, 1.0)  # asymptotic value
    padded = np.concatenate([left, resampled, right])
    blurred = np.convolve(padded, kernel, mode="valid")
    return CorrelationCurve(taus=grid, values=blurred)


# ------------------------------------------------------- frequency analysis


def dominant_frequency(taus: NDArray, values: NDArray) -> float:
    """Dominant angular frequency (rad/ps) of a uniformly sampled signal.

    Mean-subtracted, Hann-windowed, zero-padded discrete transform with
    parabolic refinement of the peak bin.
    """
    taus = np.asarray(taus, dtype=float)
    values = np.asarray(values, dtype=float)
    steps = np.diff(taus)
    if taus.size < 8 or not np.allclose(steps, steps[0], rtol=1e-9):
        raise ValueError("need a uniform grid with at least eight samples")
    dt = float(steps[0])
    signal = (values - values.mean()) * np.hanning(values.size)
    n_pad = 8 * int(2 ** math.ceil(math.log2(values.size)))
    spectrum = np.abs(np.fft.rfft(signal, n_pad))
    freqs = np.fft.rfftfreq(n_pad, dt)
    k = int(np.argmax(spectrum[1:]) + 1)
    if 0 < k < spectrum.size - 1:
        a, b, c = spectrum[k - 1 : k + 2]
        denom = a - 2.0 * b + c
        shift = 0.0 if denom == 0 else 0.5 * (a - c) / denom
    else:
        shift = 0.0
    return 2.0 * math.pi * (freqs[k] + shift * (freqs[1] - freqs[0]))


# ------------------------------------------------------------- absorption


def absorption_spectrum(
    bundle: LiouvillianBundle,
    *,
    tau_max: float = 30.0,
    dt: float = 0.002,
    omega_min: float = -100.0,
    omega_max: float = 50.0,
    domega: float = 0.25,
    taper_fraction: float = 0.1,
) -> AbsorptionSpectrum:
    """Ground-state absorption lineshape against detuning (meV).

    The dipole correlation of each emitter pair is propagated under the
    full generator from |gg>, multiplied by the vibrational displacement
    factor (kappa^2 e^{phi(tau)} same emitter, kappa^2 across), tapered
    over the trailing ``taper_fraction``, and transformed on the uniform
    delay grid.  A grid-resolution check rejects steps too coarse for
    the fastest retained beat.
    """
    rates = bundle.rates
    bath = bundle.config.bath
    span = (
        rates.lambda_total
        + 0.5 * abs(rates.j_prime)
        + 6.0 * bath.omega_c
        + max(abs(omega_min), abs(omega_max))
    )
    dt_max = math.pi * HBAR / span
    if dt > dt_max:
        raise ValueError(
            f"delay step {dt} ps cannot resolve beats up to {span:.0f} meV; "
            f"need at most {dt_max:.4f} ps"
        )
    if tau_max <= 0 or domega <= 0:
        raise ValueError("tau_max and domega must be positive")

    geom = bundle.config.geometry
    mu = [np.asarray(geom.mu1, dtype=float), np.asarray(geom.mu2, dtype=float)]
    mu_sq = float(np.linalg.norm(geom.mu1)) ** 2
    taus = np.arange(0.0, tau_max + 0.5 * dt, dt)

    propagator = Propagator(bundle.matrix)
    gg = basis_state("gg")
    rho_gg = np.outer(gg, gg.conj())
    # rotating frame at the bare transition energy: shift the spectrum
    rotation = np.exp(1j * (geom.omega_s_mev / HBAR) * taus)

    kappa_sq = bundle.phonon.kappa_total**2
    phi_tau = np.array([bundle.phonon.phi_at(t) for t in taus])
    dress_same = kappa_sq * np.exp(phi_tau)
    dress_cross = np.full(taus.size, kappa_sq, dtype=complex)

    total = np.zeros(taus.size, dtype=complex)
    for m in (1, 2):
        for n in (1, 2):
            weight = float(mu[m - 1] @ mu[n - 1]) / mu_sq
            if weight == 0.0:
                continue
            seed = site_operator(n, "raise").astype(complex) @ rho_gg
            corr = propagator.expectation_curve(
                site_operator(m, "lower").astype(complex), seed, taus
            )
            dress = dress_same if m == n else dress_cross
            total += weight * corr * rotation * dress

    n_taper = max(2, int(taper_fraction * taus.size))
    window = np.ones(taus.size)
    ramp = 0.5 * (1.0 + np.cos(np.linspace(0.0, math.pi, n_taper)))
    window[-n_taper:] = ramp
    total *= window

    omega = np.arange(omega_min, omega_max + 0.5 * domega, domega)
    transform = oscillatory_transform(taus, total, omega / HBAR)
    return AbsorptionSpectrum(
        omega=omega, values=transform.real, grid_step=float(domega)
    )


def spectrum_peaks(
    spectrum: AbsorptionSpectrum, n_peaks: int = 2, min_separation: int = 3
) -> list[tuple[float, float]]:
    """Strongest maxima as (position, height), parabolic sub-grid refinement.

    Candidates within ``min_separation`` grid steps of an already
    selected stronger maximum are treated as the same under-resolved
    line and skipped.
    """
    idx, props = find_peaks(spectrum.values, prominence=0.0)
    if idx.size == 0:
        return []
    selected: list[int] = []
    for i in np.argsort(props["prominences"])[::-1]:
        k = int(idx[i])
        if any(abs(k - s) < min_separation for s in selected):
            continue
        selected.append(k)
        if len(selected) == n_peaks:
            break
    peaks = []
    for k in sorted(selected):
        if 0 < k < spectrum.values.size - 1:
            a, b, c = spectrum.values[k - 1 : k + 2]
            denom = a - 2.0 * b + c
            shift = 0.0 if denom == 0 else 0.5 * (a - c) / denom
            pos = spectrum.omega[k] + shift * spectrum.grid_step
            height = b - 0.25 * (a - c) * shift
        else:
            pos, height = spectrum.omega[k], spectrum.values[k]
        peaks.append((float(pos), float(height)))
    return peaks
