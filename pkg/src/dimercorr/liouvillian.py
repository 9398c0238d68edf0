"""Master-equation generator for the driven, dissipative emitter pair.

The model lives in the four-state space of two two-level emitters.  After
the polaron transformation of the linearly coupled vibrational
environment the coherent part is

    H = omega_s' (n_1 + n_2) + (J'/2) (s1+ s2- + s2+ s1-),

with the site transition energy shifted down by the total reorganization
energy and the excitation-exchange coupling dressed by the squared
vibrational overlap factors, J' = kappa0^2 kappa_H^2 J.  Four dissipation
channels act on top of it:

* radiative coupling of both transition dipoles to a photon field held at
  the pump temperature, in non-secular Bloch-Redfield form: operator
  pairs of equal raising/lowering character are kept (rotating-wave
  pairing), every pair rate is evaluated at the Bohr frequency of the
  component adjacent to the density matrix, and cross-emitter terms are
  weighted by the dipole alignment factor;
* the residual emitter-bath coupling of the excitation-exchange
  (flip-flop) operators, with complex rates from the polaron kernels of
  the vibrational module -- their imaginary parts are Lamb-type shifts
  that can be disabled;
* an incoherent pump, either through the collective polarization modes of
  a pump propagation direction or through each site independently;
* optional per-site non-radiative decay and annihilation of the doubly
  excited state into the single-excitation manifold.

All generators are 16 x 16 matrices acting on column-major vectorized
density matrices (``rho.flatten(order="F")``), in units of 1/ps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np
from numpy.typing import NDArray

from .constants import spontaneous_rate_per_ps, thermal_occupation, HBAR
from .geometry import (
    DetectionMode,
    DimerGeometry,
    forster_coupling,
    mode_operators,
)
from .hilbert import DIM, EigenSystem, bohr_decompose, eigendecompose, site_operator
from .vibrational import (
    PhononFunctions,
    VibrationalBath,
    build_phonon_functions,
    coupling_rate,
)

_IDENT = np.eye(DIM)
_PUMP_SCHEMES = ("mode", "isotropic")
#: Bohr frequencies closer than this (meV) count as equal in the secular filter.
_FREQ_TOL = 1e-7


# ------------------------------------------------------------ superoperators


def hamiltonian_superop(h: NDArray) -> NDArray:
    """-(i/hbar) [H, .] as a matrix on column-vectorized density matrices."""
    return (-1j / HBAR) * (np.kron(_IDENT, h) - np.kron(h.T, _IDENT))


def lindblad_superop(c: NDArray) -> NDArray:
    """c . c+ - {c+ c, .}/2 for a single collapse operator (rate inside c)."""
    cdc = c.conj().T @ c
    return (
        np.kron(c.conj(), c)
        - 0.5 * np.kron(_IDENT, cdc)
        - 0.5 * np.kron(cdc.T, _IDENT)
    )


def bloch_redfield_term(gamma_half: complex, a: NDArray, b: NDArray) -> NDArray:
    """Gamma (A . B+ - B+ A .) plus its Hermitian conjugate, vectorized.

    ``gamma_half`` is the one-sided bath transform Gamma = gamma/2 + i S
    evaluated at the Bohr frequency of ``a``.  For a == b and real Gamma
    the sum reduces to a Lindblad dissipator with full rate 2 Gamma.  The
    result preserves trace and Hermiticity for any operator pair.
    """
    bd_a = b.conj().T @ a
    term = gamma_half * (np.kron(b.conj(), a) - np.kron(_IDENT, bd_a))
    # h.c.: conj(Gamma) (B . A+ - . A+ B); note (A+ B)^T = conj(B+ A)
    term += np.conj(gamma_half) * (
        np.kron(a.conj(), b) - np.kron(bd_a.conj(), _IDENT)
    )
    return term


# ------------------------------------------------------------- configuration


@dataclass(frozen=True)
class SystemConfig:
    """Full physical configuration of the open dimer.

    Rates (pump, non-radiative, annihilation) are dimensionless multiples
    of the reference radiative rate, the bare spontaneous rate of one
    emitter at the shifted transition energy omega_s'.

    Attributes:
        geometry: Dipole/separation geometry of the pair.
        bath: Vibrational environment shared parameters (per emitter).
        optical_temperature: Photon-field temperature in K (pump field).
        pump_rate: Incoherent pump rate in units of the reference rate.
        pump_scheme: "mode" drives the collective polarization modes of
            a pump direction; "isotropic" drives each site independently.
        pump_direction: Propagation direction for the mode scheme; None
            selects a direction that drives only the symmetric collective
            state whenever one exists.
        nonradiative_rate: Per-site decay bypassing the photon field.
        eea_rate: Rate of doubly-excited-state annihilation into each
            single-excitation site state.
        secular: Drop dissipator cross terms between non-degenerate Bohr
            frequencies.
        lamb_shifts: Keep the imaginary (energy-shift) parts of the
            vibrational rate kernels.
        propagation_phases: Carry exp(i q . r) phase factors in the
            collective pump operators.
    """

    geometry: DimerGeometry
    bath: VibrationalBath
    optical_temperature: float = 5800.0
    pump_rate: float = 1.0
    pump_scheme: str = "mode"
    pump_direction: tuple[float, float, float] | None = None
    nonradiative_rate: float = 0.0
    eea_rate: float = 0.0
    secular: bool = False
    lamb_shifts: bool = True
    propagation_phases: bool = False

    def __post_init__(self) -> None:
        if self.pump_scheme not in _PUMP_SCHEMES:
            raise ValueError(
                f"pump_scheme must be one of {_PUMP_SCHEMES}, got {self.pump_scheme!r}"
            )
        for name in ("pump_rate", "nonradiative_rate", "eea_rate"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.optical_temperature < 0:
            raise ValueError("optical_temperature must be non-negative")
        if self.pump_direction is not None:
            vec = np.asarray(self.pump_direction, dtype=float)
            if vec.shape != (3,) or not np.linalg.norm(vec) > 0:
                raise ValueError("pump_direction must be a nonzero 3-vector")
            object.__setattr__(self, "pump_direction", tuple(float(x) for x in vec))


@dataclass(frozen=True)
class SystemRates:
    """Derived scalar parameters of an assembled generator.

    Attributes:
        forster_j: Bare excitation-exchange coupling (meV).
        j_prime: Vibrationally dressed coupling (meV).
        omega_s_prime: Shifted site transition energy (meV).
        kappa0: Low-frequency-continuum overlap factor.
        kappa_h: High-frequency-mode overlap factor.
        kappa_total: Product of the two overlap factors.
        lambda_total: Total reorganization energy (meV).
        gamma_ref: Reference radiative rate (1/ps), one bare emitter at
            omega_s_prime.
        n_optical: Photon occupation at omega_s_prime.
        site_down_rate: Effective per-site downhill rate (1/ps) including
            stimulated emission and non-radiative decay.
        site_up_rate: Thermal uphill rate (1/ps).
        radiative_dressing_same: Overlap-factor power applied to
            same-emitter optical pairs (unity: sideband sum rule).
        radiative_dressing_cross: Overlap-factor power applied to
            cross-emitter optical pairs (kappa_total squared).
        pump_rate: Pump rate (1/ps).
        pump_direction: Resolved pump propagation direction (mode scheme).
        pump_weights: Fraction of the pump rate in each polarization.
    """

    forster_j: float
    j_prime: float
    omega_s_prime: float
    kappa0: float
    kappa_h: float
    kappa_total: float
    lambda_total: float
    gamma_ref: float
    n_optical: float
    site_down_rate: float
    site_up_rate: float
    radiative_dressing_same: float
    radiative_dressing_cross: float
    pump_rate: float
    pump_direction: tuple[float, float, float] | None
    pump_weights: tuple[float, float] | None


@dataclass(frozen=True)
class LiouvillianBundle:
    """Assembled generator with its ingredients.

    Attributes:
        config: The configuration it was built from.
        matrix: Complete 16 x 16 generator (1/ps).
        hamiltonian: Coherent part (meV), 4 x 4.
        eigensystem: Eigendecomposition of the Hamiltonian.
        rates: Derived scalar parameters.
        parts: Named additive pieces of ``matrix`` ("coherent",
            "radiative", "vibrational", "pump", "decay").
        phonon: Vibrational tables the generator was built with.
    """

    config: SystemConfig
    matrix: NDArray
    hamiltonian: NDArray
    eigensystem: EigenSystem
    rates: SystemRates
    parts: Mapping[str, NDArray]
    phonon: PhononFunctions


# ------------------------------------------------------------ pump direction


def default_pump_direction(geometry: DimerGeometry) -> NDArray:
    """Pump propagation direction that drives only the symmetric state.

    Along mu1_hat - mu2_hat both transverse polarizations couple to the
    two emitters with equal amplitude, so only the symmetric collective
    state is driven.  For parallel dipoles every direction does that; the
    separation axis is used, or any transverse direction if the dipoles
    point along the separation axis.
    """
    m1 = geometry.mu1 / np.linalg.norm(geometry.mu1)
    m2 = geometry.mu2 / np.linalg.norm(geometry.mu2)
    diff = m1 - m2
    if np.linalg.norm(diff) > 1e-9:
        return diff / np.linalg.norm(diff)
    r_hat = geometry.r_vec / np.linalg.norm(geometry.r_vec)
    if np.linalg.norm(np.cross(r_hat, m1)) > 1e-9:
        return r_hat
    for trial in (np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])):
        perp = np.cross(trial, m1)
        if np.linalg.norm(perp) > 1e-9:
            return perp / np.linalg.norm(perp)
    raise RuntimeError("unreachable: no direction transverse to the dipoles")


# ---------------------------------------------------------------- dissipators


def _radiative_dissipator(
    eig: EigenSystem,
    geometry: DimerGeometry,
    kappa_total: float,
    optical_temperature: float,
    secular: bool,
) -> NDArray:
    """Photon-field dissipator over both emitters, non-secular pairing.

    Same-emitter pairs keep their bare rate: the displacement-operator
    correlation at zero delay is unity, i.e. the phonon-sideband-integrated
    emission rate obeys the sum rule.  Cross-emitter pairs involve
    displacement operators of two independent baths, whose expectation
    values factorize into kappa_total each, so collective interference is
    weakened by kappa_total**2.  The resulting two-emitter rate matrix
    [[1, k2*F], [k2*F, 1]] is positive semidefinite for any overlap factor
    and dipole alignment, so both collective channels decay with
    non-negative rates at every temperature.
    """
    mu_norm = (np.linalg.norm(geometry.mu1), np.linalg.norm(geometry.mu2))
    alignment = geometry.alignment_factor
    lowering = [bohr_decompose(site_operator(m, "lower"), eig) for m in (1, 2)]
    raising = [bohr_decompose(site_operator(m, "raise"), eig) for m in (1, 2)]

    out = np.zeros((DIM * DIM, DIM * DIM), dtype=complex)
    for comps, emission in ((lowering, True), (raising, False)):
        for m in (0, 1):
            for n in (0, 1):
                for w_a, op_a in comps[m]:
                    for w_b, op_b in comps[n]:
                        if secular and abs(w_a - w_b) > _FREQ_TOL:
                            continue
                        w_abs = abs(w_a)
                        base = np.sqrt(
                            spontaneous_rate_per_ps(w_abs, mu_norm[m])
                            * spontaneous_rate_per_ps(w_abs, mu_norm[n])
                        )
                        n_th = thermal_occupation(w_abs, optical_temperature)
                        occupation = 1.0 + n_th if emission else n_th
                        if occupation == 0.0:
                            continue
                        rate = base * occupation
                        if m != n:
                            rate *= kappa_total**2 * alignment
                        out += bloch_redfield_term(0.5 * rate, op_a, op_b)
    return out


def _vibrational_dissipator(
    eig: EigenSystem,
    coupling_prefactor: float,
    phonon: PhononFunctions,
    secular: bool,
    lamb_shifts: bool,
) -> NDArray:
    """Dissipator of the exchange operators against the phonon kernels.

    ``coupling_prefactor`` is kappa_H^2 J / 2 in meV; the squared
    prefactor multiplies the kernel, which carries 1/(meV^2 ps).
    Diagonal operator pairs probe the crossed (operator-adjoint)
    displacement correlation, off-diagonal pairs the anomalous same-sign
    one.
    """
    flip = site_operator(1, "raise") @ site_operator(2, "lower")
    exchange = (bohr_decompose(flip, eig), bohr_decompose(flip.conj().T, eig))

    out = np.zeros((DIM * DIM, DIM * DIM), dtype=complex)
    pref2 = coupling_prefactor**2
    for m in (0, 1):
        for n in (0, 1):
            combo = "cross-op" if m == n else "same-op"
            for w_a, op_a in exchange[m]:
                for w_b, op_b in exchange[n]:
                    if secular and abs(w_a - w_b) > _FREQ_TOL:
                        continue
                    gamma_half = pref2 * coupling_rate(w_a, phonon, combo)
                    if not lamb_shifts:
                        gamma_half = gamma_half.real
                    if gamma_half == 0.0:
                        continue
                    out += bloch_redfield_term(gamma_half, op_a, op_b)
    return out


def _pump_channels(
    config: SystemConfig, gamma_pump: float
) -> tuple[list[NDArray], NDArray | None, NDArray | None]:
    """Collapse operators of the pump plus resolved direction/weights."""
    if gamma_pump == 0.0:
        return [], None, None
    if config.pump_scheme == "isotropic":
        ops = [
            np.sqrt(gamma_pump) * site_operator(m, "raise").astype(complex)
            for m in (1, 2)
        ]
        return ops, None, None

    direction = (
        np.asarray(config.pump_direction, dtype=float)
        if config.pump_direction is not None
        else default_pump_direction(config.geometry)
    )
    direction = direction / np.linalg.norm(direction)
    mode = DetectionMode.from_direction(direction)
    mops = mode_operators(
        config.geometry, mode, include_phases=config.propagation_phases
    )
    norm_sq = np.asarray(mops.norms) ** 2
    total = norm_sq.sum()
    mu_scale = np.linalg.norm(config.geometry.mu1) ** 2
    if total <= 1e-24 * mu_scale:
        raise ValueError(
            "pump direction is optically dark (parallel to both dipoles)"
        )
    weights = norm_sq / total
    ops = [
        np.sqrt(gamma_pump * w) * np.asarray(sp)
        for w, sp in zip(weights, mops.sigma_plus)
        if w > 1e-15
    ]
    return ops, direction, weights


# -------------------------------------------------------------------- assembly


def assemble(
    config: SystemConfig, phonon: PhononFunctions | None = None
) -> LiouvillianBundle:
    """Build the full generator and its derived parameters.

    Args:
        config: Physical configuration.
        phonon: Precomputed vibrational tables for ``config.bath``;
            built on the fly when omitted.

    Returns:
        The assembled bundle; ``bundle.matrix`` generates d(vec rho)/dt.
    """
    geometry = config.geometry
    if phonon is None:
        phonon = build_phonon_functions(config.bath)

    j_bare = forster_coupling(geometry)
    omega_prime = geometry.omega_s_mev - phonon.lambda_total
    if omega_prime <= 0:
        raise ValueError("reorganization energy exceeds the transition energy")
    j_prime = phonon.kappa0**2 * phonon.kappa_h**2 * j_bare

    mu_debye = float(np.linalg.norm(geometry.mu1))
    gamma_ref = spontaneous_rate_per_ps(omega_prime, mu_debye)
    n_optical = thermal_occupation(omega_prime, config.optical_temperature)

    gamma_pump = config.pump_rate * gamma_ref
    gamma_nr = config.nonradiative_rate * gamma_ref
    gamma_eea = config.eea_rate * gamma_ref
    site_down = gamma_ref * (1.0 + n_optical) + gamma_nr
    site_up = gamma_ref * n_optical

    number = site_operator(1, "number") + site_operator(2, "number")
    flip = site_operator(1, "raise") @ site_operator(2, "lower")
    hamiltonian = omega_prime * number + 0.5 * j_prime * (flip + flip.conj().T)
    eig = eigendecompose(hamiltonian)

    parts: dict[str, NDArray] = {}
    parts["coherent"] = hamiltonian_superop(hamiltonian)
    parts["radiative"] = _radiative_dissipator(
        eig,
        geometry,
        phonon.kappa_total,
        config.optical_temperature,
        config.secular,
    )
    if j_bare != 0.0 and config.bath.lambda0 > 0.0:
        parts["vibrational"] = _vibrational_dissipator(
            eig,
            0.5 * phonon.kappa_h**2 * j_bare,
            phonon,
            config.secular,
            config.lamb_shifts,
        )
    else:
        parts["vibrational"] = np.zeros((DIM * DIM, DIM * DIM), dtype=complex)

    pump_ops, pump_dir, pump_weights = _pump_channels(config, gamma_pump)
    pump = np.zeros((DIM * DIM, DIM * DIM), dtype=complex)
    for op in pump_ops:
        pump += lindblad_superop(op)
    parts["pump"] = pump

    decay = np.zeros((DIM * DIM, DIM * DIM), dtype=complex)
    if gamma_nr > 0.0:
        for m in (1, 2):
            decay += lindblad_superop(
                np.sqrt(gamma_nr) * site_operator(m, "lower").astype(complex)
            )
    if gamma_eea > 0.0:
        ee = 3
        for target in (1, 2):  # eg, ge
            collapse = np.zeros((DIM, DIM), dtype=complex)
            collapse[target, ee] = np.sqrt(gamma_eea)
            decay += lindblad_superop(collapse)
    parts["decay"] = decay

    matrix = sum(parts.values())
    rates = SystemRates(
        forster_j=j_bare,
        j_prime=j_prime,
        omega_s_prime=omega_prime,
        kappa0=phonon.kappa0,
        kappa_h=phonon.kappa_h,
        kappa_total=phonon.kappa_total,
        lambda_total=phonon.lambda_total,
        gamma_ref=gamma_ref,
        n_optical=n_optical,
        site_down_rate=site_down,
        site_up_rate=site_up,
        radiative_dressing_same=1.0,
        radiative_dressing_cross=phonon.kappa_total**2,
        pump_rate=gamma_pump,
        pump_direction=None if pump_dir is None else tuple(pump_dir),
        pump_weights=None if pump_weights is None else tuple(pump_weights),
    )
    return LiouvillianBundle(
        config=config,
        matrix=matrix,
        hamiltonian=hamiltonian,
        eigensystem=eig,
        rates=rates,
        parts=parts,
        phonon=phonon,
    )
