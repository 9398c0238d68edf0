"""dimercorr: photon-correlation signatures of coherence in molecular dimers.

A simulation library for a pair of dipole-coupled two-level emitters,
each strongly coupled to its own vibrational environment (treated in
the polaron frame) and weakly to the radiation field.  It computes
directional intensities, detection-direction-resolved intensity
correlations g2(tau), absorption spectra, and ensemble averages over
orientational disorder, plus a command-line interface that writes
CSV/JSON result bundles.

Typical use::

    from dimercorr import Propagator, assemble, g2_curve, preset_config
    bundle = assemble(preset_config("h-dimer"))
    curve = g2_curve(bundle, taus, direction=(0, 0, 1))
"""

from .constants import HBAR, KB, spontaneous_rate_per_ps, thermal_occupation
from .dynamics import (
    Propagator,
    SteadyStateUniquenessWarning,
    WeakNegativityWarning,
    log_time_grid,
    unvectorize,
    validate_density_matrix,
    vectorize,
)
from .ensemble import (
    DisorderSpec,
    EnsembleResult,
    ensemble_g2,
    sample_vmf,
    uniform_direction,
)
from .geometry import DetectionMode, DimerGeometry, forster_coupling
from .hilbert import basis_state, bohr_decompose, eigendecompose, site_operator
from .liouvillian import (
    LiouvillianBundle,
    SystemConfig,
    SystemRates,
    assemble,
    default_pump_direction,
)
from .observables import (
    AbsorptionSpectrum,
    CorrelationCurve,
    absorption_spectrum,
    convolve_instrument_response,
    detection_operators,
    directional_intensity,
    dominant_frequency,
    g2_curve,
    g2_numerator_and_singles,
    g2_rate_model_slope,
    g2_zero_delay,
    spectrum_peaks,
    sphere_quadrature,
    total_intensity,
)
from .presets import PRESET_NAMES, preset_config, preset_geometry, preset_summary
from .vibrational import (
    PhononFunctions,
    VibrationalBath,
    build_phonon_functions,
    coupling_rate,
    kappa0,
    phonon_propagator,
    spectral_density,
)

__version__ = "0.1.0"

__all__ = [
    "AbsorptionSpectrum",
    "CorrelationCurve",
    "DetectionMode",
    "DimerGeometry",
    "DisorderSpec",
    "EnsembleResult",
    "HBAR",
    "KB",
    "LiouvillianBundle",
    "PRESET_NAMES",
    "PhononFunctions",
    "Propagator",
    "SteadyStateUniquenessWarning",
    "SystemConfig",
    "SystemRates",
    "VibrationalBath",
    "WeakNegativityWarning",
    "absorption_spectrum",
    "assemble",
    "basis_state",
    "bohr_decompose",
    "build_phonon_functions",
    "convolve_instrument_response",
    "coupling_rate",
    "default_pump_direction",
    "detection_operators",
    "directional_intensity",
    "dominant_frequency",
    "eigendecompose",
    "ensemble_g2",
    "forster_coupling",
    "g2_curve",
    "g2_numerator_and_singles",
    "g2_rate_model_slope",
    "g2_zero_delay",
    "kappa0",
    "log_time_grid",
    "phonon_propagator",
    "preset_config",
    "preset_geometry",
    "preset_summary",
    "sample_vmf",
    "site_operator",
    "spectral_density",
    "spectrum_peaks",
    "sphere_quadrature",
    "spontaneous_rate_per_ps",
    "thermal_occupation",
    "total_intensity",
    "uniform_direction",
    "unvectorize",
    "validate_density_matrix",
    "vectorize",
    "__version__",
]
