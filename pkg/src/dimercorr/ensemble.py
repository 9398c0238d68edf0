"""Static orientational disorder and ensemble-averaged photon correlations.

A disordered ensemble redraws the direction of one (or both) transition
dipoles from a von Mises-Fisher distribution around the nominal
direction, rebuilds the full generator for every draw (the
excitation-exchange coupling follows the new geometry), and optionally
redraws the detection directions per emitter pair.  Averages follow the
coincidences-and-singles convention: the unnormalized coincidence
curves and the two singles rates are averaged separately over the
ensemble and the ratio

    <g2(tau)> = <G2(tau)> / (<I> <I'>)

is formed once at the end.  Per-sample random streams derive from
(seed, sample index), so results are bit-identical for a given spec no
matter how samples are scheduled across threads.  Standard errors come
from leave-one-out jackknife resampling of that ratio.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from numpy.typing import NDArray

from ._kernels import vmf_cos_batch
from .dynamics import Propagator
from .geometry import DimerGeometry
from .liouvillian import LiouvillianBundle, SystemConfig, assemble, default_pump_direction
from .observables import g2_numerator_and_singles
from .vibrational import PhononFunctions, build_phonon_functions

__all__ = [
    "DisorderSpec",
    "EnsembleResult",
    "ensemble_g2",
    "sample_detection",
    "sample_vmf",
    "uniform_direction",
]

_DETECTION_SCHEMES = ("fixed", "first-uniform-second-vmf", "both-uniform")
_DISORDER_TARGETS = ("second", "both")


@dataclass(frozen=True)
class DisorderSpec:
    """Description of one disordered ensemble.

    Attributes:
        kappa_orient: von Mises-Fisher concentration of the dipole
            directions (dimensionless, > 0; large means narrow).
        n_samples: Number of independent emitter pairs.
        seed: Master seed; sample ``i`` uses the stream (seed, i).
        mean_dipole: Center of the second dipole's distribution; None
            uses the base geometry's second dipole direction.
        disorder_target: "second" redraws only the second dipole,
            "both" redraws each dipole around its own nominal direction.
        detection_scheme: "fixed" uses the configured direction pair for
            every sample; "first-uniform-second-vmf" draws the first
            photon's direction uniformly and the second from a vMF cone
            around it (localized detection); "both-uniform" draws both
            independently and uniformly.
        kappa_detect: Concentration of the detection cone for the
            localized scheme.
        detection_direction: First detection direction for the fixed
            scheme.
        detection_direction2: Second detection direction; None repeats
            the first.
    """

    kappa_orient: float
    n_samples: int
    seed: int
    mean_dipole: tuple[float, float, float] | None = None
    disorder_target: str = "second"
    detection_scheme: str = "fixed"
    kappa_detect: float = 50.0
    detection_direction: tuple[float, float, float] = (0.0, 0.0, 1.0)
    detection_direction2: tuple[float, float, float] | None = None

    def __post_init__(self) -> None:
        if self.kappa_orient <= 0:
            raise ValueError("kappa_orient must be positive")
        if self.n_samples < 1:
            raise ValueError("n_samples must be at least 1")
        if self.disorder_target not in _DISORDER_TARGETS:
            raise ValueError(f"disorder_target must be one of {_DISORDER_TARGETS}")
        if self.detection_scheme not in _DETECTION_SCHEMES:
            raise ValueError(
                f"detection_scheme must be one of {_DETECTION_SCHEMES}"
            )
        if self.detection_scheme == "first-uniform-second-vmf" and (
            self.kappa_detect <= 0
        ):
            raise ValueError("kappa_detect must be positive for the vmf scheme")
        for name in ("mean_dipole", "detection_direction", "detection_direction2"):
            value = getattr(self, name)
            if value is None:
                continue
            vec = np.asarray(value, dtype=float)
            if vec.shape != (3,) or not np.linalg.norm(vec) > 0:
                raise ValueError(f"{name} must be a nonzero 3-vector")
            object.__setattr__(self, name, tuple(float(x) for x in vec))


@dataclass(frozen=True)
class EnsembleResult:
    """Averaged correlation curve with jackknife error bars.

    Attributes:
        taus: Delay grid (ps).
        mean: Ensemble-normalized g2 at each delay.
        standard_error: Leave-one-out jackknife standard error per delay.
        n_accepted: Samples that entered the averages.
        n_failed: Samples discarded due to per-sample errors.
        config_hash: Hex digest identifying (system config, spec, grid).
    """

    taus: NDArray
    mean: NDArray
    standard_error: NDArray
    n_accepted: int
    n_failed: int
    config_hash: str


# ------------------------------------------------------------------ sampling


def _tangent_frame(axis: NDArray) -> tuple[NDArray, NDArray]:
    """Deterministic orthonormal pair spanning the plane normal to axis."""
    helper = np.zeros(3)
    helper[int(np.argmin(np.abs(axis)))] = 1.0
    e1 = np.cross(axis, helper)
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(axis, e1)


def uniform_direction(rng: np.random.Generator) -> NDArray:
    """Isotropic unit vector (three normal deviates, normalized)."""
    while True:
        v = rng.normal(size=3)
        norm = np.linalg.norm(v)
        if norm > 1e-12:
            return v / norm


def sample_vmf(mean, kappa: float, rng: np.random.Generator) -> NDArray:
    """One draw from the von Mises-Fisher distribution on the sphere.

    Exact inverse-CDF sampling of the polar cosine around ``mean`` plus
    a uniform azimuth in the tangent plane.  The polar deviate is drawn
    before the azimuth, which fixes the stream layout for
    reproducibility.
    """
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    axis = np.asarray(mean, dtype=float)
    axis = axis / np.linalg.norm(axis)
    cos_theta = float(vmf_cos_batch(rng.random(1), kappa)[0])
    psi = 2.0 * np.pi * rng.random()
    sin_theta = np.sqrt(max(0.0, 1.0 - cos_theta * cos_theta))
    e1, e2 = _tangent_frame(axis)
    return (
        cos_theta * axis
        + sin_theta * (np.cos(psi) * e1 + np.sin(psi) * e2)
    )


def sample_detection(
    spec: DisorderSpec, rng: np.random.Generator
) -> tuple[NDArray, NDArray]:
    """Direction pair for the two detected photons under the spec's scheme."""
    if spec.detection_scheme == "fixed":
        q1 = np.asarray(spec.detection_direction, dtype=float)
        q2 = (
            q1
            if spec.detection_direction2 is None
            else np.asarray(spec.detection_direction2, dtype=float)
        )
        return q1, q2
    q1 = uniform_direction(rng)
    if spec.detection_scheme == "both-uniform":
        return q1, uniform_direction(rng)
    return q1, sample_vmf(q1, spec.kappa_detect, rng)


# ----------------------------------------------------------------- averaging


def _perturbed_geometry(
    base: DimerGeometry, spec: DisorderSpec, rng: np.random.Generator
) -> DimerGeometry:
    """Redraw dipole directions (magnitudes and separation unchanged)."""
    mu1 = np.asarray(base.mu1, dtype=float)
    mu2 = np.asarray(base.mu2, dtype=float)
    if spec.disorder_target == "both":
        mu1 = np.linalg.norm(mu1) * sample_vmf(mu1, spec.kappa_orient, rng)
    center = mu2 if spec.mean_dipole is None else np.asarray(spec.mean_dipole)
    mu2 = np.linalg.norm(mu2) * sample_vmf(center, spec.kappa_orient, rng)
    return replace(base, mu1=tuple(mu1), mu2=tuple(mu2))


def _single_sample(
    base_config: SystemConfig,
    spec: DisorderSpec,
    phonon: PhononFunctions,
    taus: NDArray,
    index: int,
) -> tuple[NDArray, float, float]:
    """Coincidence numerator and singles for one ensemble member."""
    rng = np.random.default_rng([spec.seed, index])
    geometry = _perturbed_geometry(base_config.geometry, spec, rng)
    q1, q2 = sample_detection(spec, rng)
    bundle = assemble(replace(base_config, geometry=geometry), phonon=phonon)
    propagator = Propagator(bundle.matrix)
    rho = propagator.steady_state(check_uniqueness=False)
    return g2_numerator_and_singles(
        bundle, taus, q1, q2, rho_ss=rho, propagator=propagator
    )


def _config_hash(base_config: SystemConfig, spec: DisorderSpec, taus: NDArray) -> str:
    payload = repr((base_config, spec)).encode() + taus.tobytes()
    return hashlib.sha256(payload).hexdigest()[:16]


def ensemble_g2(
    base_config: SystemConfig,
    spec: DisorderSpec,
    taus,
    *,
    phonon: PhononFunctions | None = None,
    threads: int = 1,
) -> EnsembleResult:
    """Disorder-averaged photon correlation curve with error bars.

    Builds one generator per sample from a redrawn geometry, collects
    the unnormalized coincidences and singles, and normalizes their
    ensemble means.  Samples whose generator construction or stationary
    solve fails are excluded and counted; more than 5% failures aborts
    the run.  The result is bit-identical for a given (config, spec,
    grid) for any ``threads``.
    """
    taus = np.asarray(taus, dtype=float)
    if taus.size == 0:
        raise ValueError("delay grid must not be empty")
    if phonon is None:
        phonon = build_phonon_functions(base_config.bath)
    if base_config.pump_scheme == "mode" and base_config.pump_direction is None:
        # pin the pump beam in the lab frame: the nominal geometry decides
        pinned = tuple(default_pump_direction(base_config.geometry))
        base_config = replace(base_config, pump_direction=pinned)

    n = spec.n_samples
    numerators = np.zeros((n, taus.size))
    singles1 = np.zeros(n)
    singles2 = np.zeros(n)
    failed = np.zeros(n, dtype=bool)

    def run(index: int) -> None:
        try:
            numer, s1, s2 = _single_sample(
                base_config, spec, phonon, taus, index
            )
        except Exception:
            failed[index] = True
            return
        numerators[index] = numer
        singles1[index] = s1
        singles2[index] = s2

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run, range(n)))
    else:
        for index in range(n):
            run(index)

    n_failed = int(failed.sum())
    if n_failed > 0.05 * n:
        raise RuntimeError(
            f"{n_failed} of {n} ensemble samples failed (more than 5%)"
        )
    keep = ~failed
    n_acc = int(keep.sum())
    numerators = numerators[keep]
    singles1 = singles1[keep]
    singles2 = singles2[keep]

    sum_numer = numerators.sum(axis=0)
    sum_s1 = float(singles1.sum())
    sum_s2 = float(singles2.sum())
    denominator = (sum_s1 / n_acc) * (sum_s2 / n_acc)
    if denominator <= 0:
        raise RuntimeError("ensemble-averaged intensities vanished")
    mean = (sum_numer / n_acc) / denominator

    if n_acc > 1:
        m = n_acc - 1
        loo_numer = (sum_numer[None, :] - numerators) / m
        loo_s1 = (sum_s1 - singles1) / m
        loo_s2 = (sum_s2 - singles2) / m
        loo = loo_numer / (loo_s1 * loo_s2)[:, None]
        centered = loo - loo.mean(axis=0)[None, :]
        standard_error = np.sqrt(
            (m / n_acc) * np.sum(centered**2, axis=0)
        )
    else:
        standard_error = np.zeros(taus.size)

    return EnsembleResult(
        taus=taus,
        mean=mean,
        standard_error=standard_error,
        n_accepted=n_acc,
        n_failed=n_failed,
        config_hash=_config_hash(base_config, spec, taus),
    )
