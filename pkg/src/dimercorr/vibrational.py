"""Vibrational environment: spectral densities and polaron-frame functions.

Each emitter couples to its own harmonic continuum with a super-Ohmic
spectral density

    J(w) = (lambda0 / 2 w_c^3) w^3 exp(-w / w_c)

optionally augmented by narrow high-frequency Gaussian peaks
alpha_i w^3 exp[-(w - w_i)^2 / gamma_i^2].  In the polaron frame the
continuum enters through the phonon propagator

    phi(t) = int_0^inf dw J(w)/w^2 [cos(w t / hbar) coth(w / 2 kT)
                                     - i sin(w t / hbar)]

which renormalizes coherent couplings by kappa0 = exp(-phi(0)/2) and
generates the multi-phonon rate integrals

    K(w) = kappa0^2 / hbar^2 * int_0^inf e^{i w t / hbar} (e^{-+phi(t)} - 1) dt

used by the inter-exciton dissipator (multiply by the squared coupling
energy in meV^2 to obtain a 1/ps coefficient).  Sharp high-frequency
modes are treated statically: they contribute a multiplicative kappa_H
to every sigma_x-type coupling and a reorganization shift lambda_H,
while staying out of phi(t) so nothing is double counted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray
from scipy import integrate

from ._kernels import oscillatory_transform
from .constants import HBAR, KB

#: Upper integration limit for the continuum, in units of omega_c.
_OMEGA_SPAN = 40.0


@dataclass(frozen=True)
class VibrationalBath:
    """Parameters of one emitter's vibrational environment.

    Attributes:
        lambda0: Reorganization energy of the super-Ohmic continuum [meV].
        omega_c: Cutoff frequency of the continuum [meV].
        temperature: Bath temperature [K].
        hf_modes: High-frequency peaks as (alpha_i, omega_i [meV],
            gamma_i [meV]) tuples; alpha is the dimensionless amplitude.
    """

    lambda0: float
    omega_c: float
    temperature: float
    hf_modes: tuple[tuple[float, float, float], ...] = ()

    def __post_init__(self):
        if self.lambda0 < 0.0:
            raise ValueError("lambda0 must be >= 0")
        if self.omega_c <= 0.0:
            raise ValueError("omega_c must be > 0")
        if self.temperature < 0.0:
            raise ValueError("temperature must be >= 0")
        object.__setattr__(
            self, "hf_modes", tuple(tuple(float(x) for x in m) for m in self.hf_modes)
        )
        for alpha, omega_i, gamma_i in self.hf_modes:
            if gamma_i <= 0.0:
                raise ValueError("hf mode width gamma_i must be > 0")
            if omega_i <= 0.0:
                raise ValueError("hf mode frequency omega_i must be > 0")


def spectral_density(omega, bath: VibrationalBath):
    """J(omega) in meV, for scalar or array omega >= 0.

    Raises:
        ValueError: For any negative frequency.
    """
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0.0):
        raise ValueError("spectral_density is defined for omega >= 0 only")
    out = 0.5 * bath.lambda0 / bath.omega_c**3 * w**3 * np.exp(-w / bath.omega_c)
    for alpha, omega_i, gamma_i in bath.hf_modes:
        out = out + alpha * w**3 * np.exp(-(((w - omega_i) / gamma_i) ** 2))
    if np.isscalar(omega):
        return float(out)
    return out


def _hf_reorganization(alpha: float, omega_i: float, gamma_i: float) -> float:
    """lambda_Hi = int J_i(w)/w dw for one Gaussian peak, clipped to w >= 0."""
    lo = max(0.0, omega_i - 12.0 * gamma_i)
    hi = omega_i + 12.0 * gamma_i
    val, _ = integrate.quad(
        lambda w: alpha * w**2 * math.exp(-(((w - omega_i) / gamma_i) ** 2)),
        lo,
        hi,
        epsrel=1e-10,
    )
    return val


def reorganization_energy(bath: VibrationalBath) -> float:
    """Total reorganization energy int J(w)/w dw = lambda0 + lambda_H [meV]."""
    return bath.lambda0 + sum(_hf_reorganization(*m) for m in bath.hf_modes)


def hf_renormalization(bath: VibrationalBath) -> tuple[float, float]:
    """Static renormalization (kappa_H, lambda_H) from the high-frequency peaks.

    kappa_H = prod_i exp(-lambda_Hi / 2 omega_i) multiplies every
    sigma_x-type coupling; lambda_H = sum_i lambda_Hi shifts the
    transition energy.  Without HF modes this is the identity (1, 0).
    """
    kappa_h = 1.0
    lambda_h = 0.0
    for alpha, omega_i, gamma_i in bath.hf_modes:
        lam_i = _hf_reorganization(alpha, omega_i, gamma_i)
        kappa_h *= math.exp(-lam_i / (2.0 * omega_i))
        lambda_h += lam_i
    return kappa_h, lambda_h


def _propagator_integrands(bath: VibrationalBath):
    """A(w) and B(w) with phi(t) = int A cos(wt/hbar) - i B sin(wt/hbar) dw.

    A carries w * coth(w / 2kT) evaluated in product form (finite 2kT limit
    at w -> 0).  Only the super-Ohmic continuum contributes; HF peaks are
    handled statically by :func:`hf_renormalization`.
    """
    pref = 0.5 * bath.lambda0 / bath.omega_c**3

    def a_func(w):
        scalar = np.isscalar(w)
        w = np.atleast_1d(np.asarray(w, dtype=float))
        if bath.temperature <= 0.0:
            g = w.copy()
        else:
            two_kt = 2.0 * KB * bath.temperature
            x = w / two_kt
            g = np.empty_like(w)
            small = x < 1e-6
            g[small] = two_kt * (1.0 + x[small] ** 2 / 3.0)
            g[~small] = w[~small] / np.tanh(x[~small])
        out = pref * g * np.exp(-w / bath.omega_c)
        return float(out[0]) if scalar else out

    def b_func(w):
        scalar = np.isscalar(w)
        w = np.atleast_1d(np.asarray(w, dtype=float))
        out = pref * w * np.exp(-w / bath.omega_c)
        return float(out[0]) if scalar else out

    return a_func, b_func


def phonon_propagator(t: float, bath: VibrationalBath) -> complex:
    """phi(t) of the super-Ohmic continuum by adaptive quadrature.

    This is the slow reference evaluation (one adaptive integral per
    call); tabulation workloads go through :func:`build_phonon_functions`.

    Args:
        t: Time in ps.
        bath: Bath parameters.

    Returns:
        Complex phi(t); phi(0) is real and equals 2 ln(1/kappa0).
    """
    a_func, b_func = _propagator_integrands(bath)
    if bath.lambda0 == 0.0:
        return 0.0 + 0.0j
    upper = _OMEGA_SPAN * bath.omega_c
    if t == 0.0:
        re, _ = integrate.quad(a_func, 0.0, upper, epsrel=1e-10, limit=400)
        return complex(re, 0.0)
    wvar = t / HBAR
    re, _ = integrate.quad(
        a_func, 0.0, upper, weight="cos", wvar=wvar, epsrel=1e-10, limit=400
    )
    im, _ = integrate.quad(
        b_func, 0.0, upper, weight="sin", wvar=wvar, epsrel=1e-10, limit=400
    )
    return complex(re, -im)


def kappa0(bath: VibrationalBath) -> float:
    """Polaron renormalization kappa0 = exp(-phi(0)/2) of the continuum."""
    return math.exp(-0.5 * phonon_propagator(0.0, bath).real)


@dataclass(frozen=True)
class PhononFunctions:
    """Tabulated polaron-frame functions for one bath.

    Attributes:
        bath: The bath these functions belong to.
        t_grid: Tabulation times [ps], t_grid[0] == 0.
        phi_tab: Complex phi(t) samples on ``t_grid``.
        kappa0: Continuum renormalization exp(-phi(0)/2).
        kappa_h: High-frequency static renormalization.
        lambda_h: High-frequency reorganization shift [meV].
        lambda_total: lambda0 + lambda_h [meV].
        t_max: Truncation time [ps] where |phi| fell below the tail
            threshold (diagnostic for the rate integrals).
    """

    bath: VibrationalBath
    t_grid: NDArray[np.floating] = field(repr=False)
    phi_tab: NDArray[np.complexfloating] = field(repr=False)
    kappa0: float
    kappa_h: float
    lambda_h: float
    lambda_total: float
    t_max: float

    @property
    def kappa_total(self) -> float:
        """Combined sigma_x renormalization kappa0 * kappa_H."""
        return self.kappa0 * self.kappa_h

    def phi_at(self, t) -> NDArray[np.complexfloating]:
        """Linear interpolation of phi on the tabulation grid (0 beyond it)."""
        t = np.asarray(t, dtype=float)
        re = np.interp(t, self.t_grid, self.phi_tab.real, right=0.0)
        im = np.interp(t, self.t_grid, self.phi_tab.imag, right=0.0)
        return re + 1j * im


def _omega_grid(omega_c: float) -> np.ndarray:
    dense = np.linspace(0.0, 8.0 * omega_c, 6401)
    tail = np.geomspace(8.0 * omega_c, _OMEGA_SPAN * omega_c, 280)[1:]
    return np.concatenate([dense, tail])


def build_phonon_functions(
    bath: VibrationalBath,
    tail_threshold: float = 1e-8,
    t_end: float = 240.0,
) -> PhononFunctions:
    """Tabulate phi(t) and the static renormalizations for a bath.

    phi is evaluated as a pair of Filon-type oscillatory transforms of the
    smooth integrands A(w), B(w) (piecewise-linear in w, exact in t), on a
    geometric time grid extended until |phi| stays below
    ``tail_threshold * |phi(0)|``.

    Raises:
        RuntimeError: If |phi| has not decayed below the threshold by
            16 * t_end ps (quadrature/parameter pathology).
    """
    kappa_h, lambda_h = hf_renormalization(bath)
    lambda_total = bath.lambda0 + lambda_h

    if bath.lambda0 == 0.0:
        t_grid = np.array([0.0, 1.0])
        phi_tab = np.zeros(2, dtype=complex)
        return PhononFunctions(
            bath=bath,
            t_grid=t_grid,
            phi_tab=phi_tab,
            kappa0=1.0,
            kappa_h=kappa_h,
            lambda_h=lambda_h,
            lambda_total=lambda_total,
            t_max=t_grid[-1],
        )

    w = _omega_grid(bath.omega_c)
    a_func, b_func = _propagator_integrands(bath)
    a_vals = a_func(w).astype(complex)
    b_vals = b_func(w).astype(complex)

    end = t_end
    while True:
        t_grid = np.concatenate([[0.0], np.geomspace(5e-5, end, 1600)])
        ks = t_grid / HBAR
        f_a = oscillatory_transform(w, a_vals, ks)
        f_b = oscillatory_transform(w, b_vals, ks)
        phi_tab = f_a.real - 1j * f_b.imag

        phi0 = abs(phi_tab[0])
        absphi = np.abs(phi_tab)
        # suffix maximum: first index from which |phi| stays below threshold
        suffix_max = np.maximum.accumulate(absphi[::-1])[::-1]
        below = np.nonzero(suffix_max < tail_threshold * phi0)[0]
        if below.size > 0:
            cut = max(int(below[0]), 8) + 1
            t_grid = t_grid[:cut]
            phi_tab = phi_tab[:cut]
            break
        if end > 16.0 * t_end:
            raise RuntimeError(
                "phonon propagator tail has not decayed below "
                f"{tail_threshold:.1e} x |phi(0)| by t = {end} ps "
                f"(|phi| ends at {absphi[-1]:.3e}, phi(0) = {phi0:.3e})"
            )
        end *= 4.0

    return PhononFunctions(
        bath=bath,
        t_grid=t_grid,
        phi_tab=phi_tab,
        kappa0=math.exp(-0.5 * phi_tab[0].real),
        kappa_h=kappa_h,
        lambda_h=lambda_h,
        lambda_total=lambda_total,
        t_max=float(t_grid[-1]),
    )


_COMBOS = ("same-op", "cross-op")


def coupling_rate(
    omega: float,
    phonon: PhononFunctions,
    combo: str,
    tail_tol: float = 1e-6,
) -> complex:
    """Half-line multi-phonon rate kernel K(omega) of the polaron dissipator.

    K(omega) = kappa0^2 / hbar^2 * int_0^inf e^{i omega t / hbar}
               (e^{-+ phi(t)} - 1) dt

    with the upper sign ("same-op", from <B+- B+-> = kappa0^2 e^{-phi})
    and the lower sign ("cross-op", from <B-+ B+-> = kappa0^2 e^{+phi}).
    The constant mean kappa0^2 is subtracted: that part is the coherent
    renormalization already carried by J' = kappa0^2 J.

    Args:
        omega: Transition energy [meV] (either sign).
        phonon: Tabulated functions from :func:`build_phonon_functions`.
        combo: "same-op" or "cross-op".
        tail_tol: Error if the integrand at t_max still exceeds this.

    Returns:
        Complex kernel in 1/(meV^2 ps): multiply by the squared coupling
        energy (e.g. (kappa_H^2 J / 2)^2) for a 1/ps dissipator
        coefficient.  Re K >= 0 for the cross-op combo; Im K is the
        Lamb-type shift.

    Raises:
        ValueError: Unknown combo, or truncated tail above ``tail_tol``.
    """
    if combo not in _COMBOS:
        raise ValueError(f"combo must be one of {_COMBOS}, got {combo!r}")
    if phonon.bath.lambda0 == 0.0:
        return 0.0 + 0.0j
    sign = -1.0 if combo == "same-op" else +1.0
    psi = np.expm1(sign * phonon.phi_tab)
    tail = abs(psi[-1])
    if tail > tail_tol:
        raise ValueError(
            f"phi tabulation truncated too early for the rate integral: "
            f"|e^(-+phi)-1| = {tail:.3e} > tail_tol = {tail_tol:.1e} at "
            f"t_max = {phonon.t_max} ps"
        )
    val = oscillatory_transform(phonon.t_grid, psi, np.array([omega / HBAR]))[0]
    return complex(phonon.kappa0**2 / HBAR**2 * val)
