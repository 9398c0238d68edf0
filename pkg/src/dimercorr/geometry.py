"""Dimer geometry: Förster coupling, polarization bases, mode operators.

Two fixed point dipoles mu1, mu2 (Debye) sit at -r/2 and +r/2 (nm).  A
far-field detector direction q_hat carries two transverse polarization
vectors; projecting the dipoles onto a polarization defines the
"mode-selective" collective ladder operators

    sigma_q^+ = ( mu^(1) sigma_1^+ + mu^(2) sigma_2^+ ) / N

(sub-wavelength limit: the light-cone phases exp(+-i q.r/2) are 1) and
with them the two families of single-excitation intermediate states

    |psi_g> = ( mu^(1)|eg> + mu^(2)|ge> ) / N      reached from |gg>
    |psi_e> = ( mu^(2)|eg> + mu^(1)|ge> ) / N      left behind from |ee>

whose overlap controls directional photon-photon correlations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from . import constants
from .hilbert import DIM, OperatorMatrix, StateVector, site_operator

Vector3 = NDArray[np.floating]

#: hbar * c in eV nm, for converting photon energy to wavenumber.
_HBARC_EV_NM = 197.3269804


def _as_vec3(v, name: str) -> Vector3:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class DimerGeometry:
    """Fixed spatial arrangement of the two emitters.

    Attributes:
        mu1: Transition dipole of emitter 1 [Debye, 3-vector].
        mu2: Transition dipole of emitter 2 [Debye, 3-vector].
        r_vec: Separation vector from emitter 1 to emitter 2 [nm].
        omega_s_ev: Bare electronic transition energy [eV].
        allow_unequal_dipoles: Skip the identical-monomer magnitude check.
    """

    mu1: Vector3
    mu2: Vector3
    r_vec: Vector3
    omega_s_ev: float = 1.8
    allow_unequal_dipoles: bool = False

    def __post_init__(self):
        object.__setattr__(self, "mu1", _as_vec3(self.mu1, "mu1"))
        object.__setattr__(self, "mu2", _as_vec3(self.mu2, "mu2"))
        object.__setattr__(self, "r_vec", _as_vec3(self.r_vec, "r_vec"))
        if np.linalg.norm(self.r_vec) <= 0.0:
            raise ValueError("emitter separation |r_vec| must be positive")
        m1, m2 = np.linalg.norm(self.mu1), np.linalg.norm(self.mu2)
        if m1 == 0.0 or m2 == 0.0:
            raise ValueError("dipole magnitudes must be nonzero")
        if not self.allow_unequal_dipoles and abs(m1 - m2) > 1e-9 * max(m1, m2):
            raise ValueError(
                f"|mu1|={m1} D and |mu2|={m2} D differ; identical monomers are "
                "assumed (pass allow_unequal_dipoles=True to override)"
            )

    @property
    def omega_s_mev(self) -> float:
        """Bare transition energy in meV."""
        return self.omega_s_ev * 1e3

    @property
    def alignment_factor(self) -> float:
        """Normalized dipole alignment cos(theta_12) = mu1_hat . mu2_hat."""
        return float(
            np.dot(self.mu1, self.mu2)
            / (np.linalg.norm(self.mu1) * np.linalg.norm(self.mu2))
        )


@dataclass(frozen=True)
class DetectionMode:
    """Far-field detection direction with its transverse polarization pair.

    The polarization vectors follow the fixed convention

        lambda1 = (cos t cos p, cos t sin p, -sin t)
        lambda2 = (-sin p, cos p, 0)

    so that (lambda1, lambda2, q_hat) is a right-handed orthonormal triad.

    Attributes:
        theta: Polar angle of the detector [rad].
        phi: Azimuthal angle of the detector [rad].
        q_hat: Derived unit direction.
        lambda1, lambda2: Derived orthonormal polarization vectors.
    """

    theta: float
    phi: float
    q_hat: Vector3 = field(init=False)
    lambda1: Vector3 = field(init=False)
    lambda2: Vector3 = field(init=False)

    def __post_init__(self):
        st, ct = math.sin(self.theta), math.cos(self.theta)
        sp, cp = math.sin(self.phi), math.cos(self.phi)
        object.__setattr__(self, "q_hat", np.array([st * cp, st * sp, ct]))
        object.__setattr__(self, "lambda1", np.array([ct * cp, ct * sp, -st]))
        object.__setattr__(self, "lambda2", np.array([-sp, cp, 0.0]))

    @classmethod
    def from_direction(cls, direction) -> "DetectionMode":
        """Build the mode for an arbitrary (not necessarily unit) direction."""
        v = _as_vec3(direction, "direction")
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise ValueError("detection direction must be nonzero")
        v = v / norm
        theta = math.acos(min(1.0, max(-1.0, v[2])))
        phi = math.atan2(v[1], v[0])
        return cls(theta=theta, phi=phi)


@dataclass(frozen=True)
class ModeOperators:
    """Mode-selective ladder operators for one detection direction.

    Attributes:
        mode: The detection mode these operators belong to.
        projections: ``projections[m, i]`` = mu_{m+1} . lambda_{i+1} [Debye]
            (complex once sub-wavelength phases are re-enabled).
        norms: Per-polarization normalization N [Debye],
            N^2 = |mu^(1)|^2 + |mu^(2)|^2.
        sigma_plus, sigma_minus: Per-polarization 4x4 ladder operators
            (zero matrices where N == 0).
        psi_g, psi_e: Per-polarization intermediate states, or None where
            the polarization does not couple (N == 0).
    """

    mode: DetectionMode
    projections: NDArray[np.complexfloating]
    norms: NDArray[np.floating]
    sigma_plus: tuple[OperatorMatrix, OperatorMatrix]
    sigma_minus: tuple[OperatorMatrix, OperatorMatrix]
    psi_g: tuple[StateVector | None, StateVector | None]
    psi_e: tuple[StateVector | None, StateVector | None]


def forster_coupling(geom: DimerGeometry) -> float:
    """Point-dipole (Förster) coupling between the two emitters, in meV.

    J = (1 / 4 pi eps0) [ mu1.mu2 / r^3 - 3 (r.mu1)(r.mu2) / r^5 ]

    Positive for side-by-side parallel dipoles (H-type), negative for
    head-to-tail (J-type); vanishes at the magic angle cos^2(theta) = 1/3.

    Args:
        geom: Dimer geometry (Debye / nm).

    Returns:
        Coupling J in meV.

    Raises:
        ValueError: If the separation is zero (guarded at construction too).
    """
    r = geom.r_vec * constants.NM
    r_len = np.linalg.norm(r)
    if r_len <= 0.0:
        raise ValueError("zero emitter separation")
    mu1 = geom.mu1 * constants.DEBYE
    mu2 = geom.mu2 * constants.DEBYE
    k = 1.0 / (4.0 * math.pi * constants.EPSILON_0)
    joules = k * (
        np.dot(mu1, mu2) / r_len**3
        - 3.0 * np.dot(r, mu1) * np.dot(r, mu2) / r_len**5
    )
    return float(joules / constants.MEV)


def polarization_basis(theta: float, phi: float) -> tuple[Vector3, Vector3]:
    """The two transverse polarization vectors for a detection direction.

    Returns the exact closed forms lambda1 = (cos t cos p, cos t sin p,
    -sin t) and lambda2 = (-sin p, cos p, 0).
    """
    mode = DetectionMode(theta=theta, phi=phi)
    return mode.lambda1, mode.lambda2


def dipole_projections(geom: DimerGeometry, mode: DetectionMode) -> NDArray[np.floating]:
    """Projections of both dipoles onto both polarization vectors.

    Args:
        geom: Dimer geometry.
        mode: Detection mode.

    Returns:
        A (2, 2) array, ``out[m, i] = mu_{m+1} . lambda_{i+1}`` in Debye.
    """
    out = np.empty((2, 2))
    for m, mu in enumerate((geom.mu1, geom.mu2)):
        for i, lam in enumerate((mode.lambda1, mode.lambda2)):
            out[m, i] = float(np.dot(mu, lam))
    return out


def aligned_frame_projections(
    geom: DimerGeometry, mode: DetectionMode
) -> tuple[NDArray[np.floating], bool]:
    """Dipole-polarization projections via the separation-aligned closed forms.

    Works in the frame with e_z along r_hat and e_x along the transverse
    part of mu1, where the projections have the closed forms

        mu . lambda1 = (Lam_mu / r) cos t' cos(p' - p_mu) - (mu . r_hat) sin t'
        mu . lambda2 = -(Lam_mu / r) sin(p' - p_mu)

    with Lam_mu = sqrt(r^2 mu^2 - (r.mu)^2) and (t', p') the detector
    angles expressed in that frame.  When mu1 is (anti)parallel to r the
    frame is degenerate; the direct dot products are returned instead and
    the second element of the result is True.

    Returns:
        (projections, frame_degenerate) with projections shaped like
        :func:`dipole_projections`.
    """
    r = geom.r_vec
    r_len = float(np.linalg.norm(r))
    r_hat = r / r_len

    mu1_perp = geom.mu1 - np.dot(geom.mu1, r_hat) * r_hat
    lam1_len = np.linalg.norm(r) * np.linalg.norm(mu1_perp)  # = Lam_mu1
    if lam1_len < 1e-12 * r_len * np.linalg.norm(geom.mu1):
        return dipole_projections(geom, mode), True

    e_z = r_hat
    e_x = mu1_perp / np.linalg.norm(mu1_perp)
    e_y = np.cross(e_z, e_x)

    q_local = np.array(
        [np.dot(mode.q_hat, e_x), np.dot(mode.q_hat, e_y), np.dot(mode.q_hat, e_z)]
    )
    theta_l = math.acos(min(1.0, max(-1.0, q_local[2])))
    phi_l = math.atan2(q_local[1], q_local[0])

    out = np.empty((2, 2))
    for m, mu in enumerate((geom.mu1, geom.mu2)):
        mu_par = float(np.dot(mu, r_hat))
        mu_perp = mu - mu_par * r_hat
        lam_over_r = float(np.linalg.norm(mu_perp))  # Lam_mu / r
        phi_mu = math.atan2(np.dot(mu_perp, e_y), np.dot(mu_perp, e_x))
        out[m, 0] = lam_over_r * math.cos(theta_l) * math.cos(phi_l - phi_mu) - mu_par * math.sin(theta_l)
        out[m, 1] = -lam_over_r * math.sin(phi_l - phi_mu)
    return out, False


def mode_operators(
    geom: DimerGeometry, mode: DetectionMode, include_phases: bool = False
) -> ModeOperators:
    """Mode-selective ladder operators and intermediate states (both polarizations).

    Args:
        geom: Dimer geometry.
        mode: Detection direction.
        include_phases: Re-enable the sub-wavelength light-cone phases
            exp(-+ i q.r/2) on the two emitters (off by default; they differ
            from 1 by ~1e-2 rad at 1.8 eV and 2 nm).

    Returns:
        The assembled :class:`ModeOperators`.
    """
    raw = dipole_projections(geom, mode).astype(complex)

    if include_phases:
        q_len_per_nm = geom.omega_s_ev / _HBARC_EV_NM
        half_phase = 0.5 * q_len_per_nm * float(np.dot(mode.q_hat, geom.r_vec))
        # raising operators: emitter 1 carries e^{-i q.r/2}, emitter 2 e^{+i q.r/2}
        raw[0, :] *= np.exp(-1j * half_phase)
        raw[1, :] *= np.exp(+1j * half_phase)

    sp1, sp2 = site_operator(1, "raise"), site_operator(2, "raise")
    eg = np.zeros(DIM, dtype=complex)
    eg[1] = 1.0
    ge = np.zeros(DIM, dtype=complex)
    ge[2] = 1.0

    sigma_plus: list[OperatorMatrix] = []
    psi_g: list[StateVector | None] = []
    psi_e: list[StateVector | None] = []
    norms = np.sqrt(np.abs(raw[0, :]) ** 2 + np.abs(raw[1, :]) ** 2)
    scale = max(np.linalg.norm(geom.mu1), np.linalg.norm(geom.mu2))

    for i in range(2):
        n = norms[i]
        if n <= 1e-12 * scale:
            norms[i] = 0.0
            sigma_plus.append(np.zeros((DIM, DIM), dtype=complex))
            psi_g.append(None)
            psi_e.append(None)
            continue
        m1, m2 = raw[0, i], raw[1, i]
        sigma_plus.append((m1 * sp1 + m2 * sp2) / n)
        psi_g.append((m1 * eg + m2 * ge) / n)
        # ket convention fixed by sigma^+ = |psi_g><gg| + |ee><psi_e|
        psi_e.append((np.conj(m2) * eg + np.conj(m1) * ge) / n)

    sigma_minus = tuple(op.conj().T for op in sigma_plus)
    return ModeOperators(
        mode=mode,
        projections=raw,
        norms=norms,
        sigma_plus=tuple(sigma_plus),
        sigma_minus=sigma_minus,
        psi_g=tuple(psi_g),
        psi_e=tuple(psi_e),
    )
