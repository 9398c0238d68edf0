"""Command-line interface: load a run configuration, execute it, write results.

Subcommands
    run           execute one observable pipeline, write CSV + JSON bundle
    validate      check a configuration file and report problems
    list-presets  show the named example systems

Configuration files are TOML (or JSON with the same structure) with four
sections::

    [system]        # preset name and/or explicit physical parameters
    [observable]    # what to compute: kind plus kind-specific keys
    [disorder]      # ensemble kind only: orientation/detection noise
    [output]        # file prefix and random seed

Keys carry their units as suffixes (``lambda0_mev``, ``tau_max_ps``,
``temperatures_k``); rates named ``*_gamma`` are multiples of the
reference radiative rate.  ``run --preset NAME`` starts from a named
system (overriding any ``system.preset`` key in the file); explicit
``[system]`` keys then override individual preset fields.

Every run writes a JSON bundle that contains the fully resolved
configuration under the same section names, so the bundle itself is a
valid configuration file: re-running it reproduces the CSV byte for
byte.  Extra sections (``derived``, ``results``, ``provenance``,
``data``) are ignored on ingest.

Exit codes: 0 success, 2 configuration problem (parse error, unknown
key, invalid value), 1 runtime failure.  Outputs are rendered in memory
and moved into place only after the computation succeeds, so a failed
run leaves no partial files.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Any, Sequence

import numpy as np

try:  # Python 3.11+
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - depends on interpreter
    import tomli as tomllib

from . import __version__
from .dynamics import Propagator
from .ensemble import DisorderSpec, ensemble_g2
from .geometry import DimerGeometry, forster_coupling
from .hilbert import basis_state
from .liouvillian import LiouvillianBundle, SystemConfig, assemble
from .observables import (
    absorption_spectrum,
    convolve_instrument_response,
    directional_intensity,
    g2_curve,
    g2_zero_delay,
    spectrum_peaks,
    total_intensity,
)
from .presets import PRESET_NAMES, preset_config, preset_summary
from .vibrational import VibrationalBath, build_phonon_functions

__all__ = ["ConfigError", "main", "load_raw_config", "resolve_run", "execute_run"]

OBSERVABLE_KINDS = (
    "intensity",
    "g2",
    "spectrum",
    "temperature-sweep",
    "ensemble",
    "irf-sweep",
    "angle-sweep",
)

_IGNORED_SECTIONS = {"derived", "results", "provenance", "data"}
_SECTIONS = {"system", "observable", "disorder", "output"}

_SYSTEM_KEYS = {
    "preset",
    "mu1_debye",
    "mu2_debye",
    "r_nm",
    "omega_s_ev",
    "lambda0_mev",
    "omega_c_mev",
    "temperature_k",
    "hf_modes",
    "optical_temperature_k",
    "pump_rate_gamma",
    "pump_scheme",
    "pump_direction",
    "nonradiative_rate_gamma",
    "eea_rate_gamma",
    "secular",
    "lamb_shifts",
    "propagation_phases",
}

# Keys accepted in [observable] for each kind (besides "kind" itself).
_OBSERVABLE_KEYS = {
    "intensity": {"tau_max_ps", "tau_points", "direction"},
    "g2": {"tau_max_ps", "tau_points", "direction", "direction2"},
    "spectrum": {
        "tau_max_ps",
        "dt_ps",
        "omega_min_mev",
        "omega_max_mev",
        "domega_mev",
    },
    "temperature-sweep": {"temperatures_k", "direction", "direction2"},
    "ensemble": {"tau_max_ps", "tau_points", "direction", "direction2"},
    "irf-sweep": {"tau_max_ps", "tau_points", "direction", "direction2", "irf_fwhm_ps"},
    "angle-sweep": {"sweep", "angle_points", "fixed_angle_rad"},
}

_DISORDER_KEYS = {
    "kappa_orient",
    "n_samples",
    "disorder_target",
    "detection_scheme",
    "kappa_detect",
    "detection_direction",
    "detection_direction2",
}

_OUTPUT_KEYS = {"prefix", "seed"}


class ConfigError(Exception):
    """Invalid run configuration; ``messages`` name the offending keys."""

    def __init__(self, messages: str | Sequence[str]):
        if isinstance(messages, str):
            messages = [messages]
        self.messages = list(messages)
        super().__init__("; ".join(self.messages))


@dataclass(frozen=True)
class ResolvedRun:
    """A fully validated run: domain objects plus the serializable config."""

    system: SystemConfig
    observable: dict[str, Any]
    disorder: DisorderSpec | None
    prefix: str
    seed: int


# ----------------------------------------------------------------------
# Loading and validation


def load_raw_config(path: str) -> dict:
    """Parse a TOML or JSON configuration file into a plain dict."""
    if not os.path.isfile(path):
        raise ConfigError(f"config file not found: {path}")
    suffix = os.path.splitext(path)[1].lower()
    try:
        with open(path, "rb") as fh:
            data = fh.read()
        if suffix == ".toml":
            raw = tomllib.loads(data.decode("utf-8"))
        elif suffix == ".json":
            raw = json.loads(data.decode("utf-8"))
        else:
            raise ConfigError(
                f"config file must end in .toml or .json, got {path!r}"
            )
    except ConfigError:
        raise
    except Exception as exc:
        raise ConfigError(f"could not parse {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a table/object")
    return raw


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


class _Section:
    """Typed key extraction from one config section, accumulating errors."""

    def __init__(self, name: str, table: dict, errors: list[str]):
        self.name = name
        self.table = table
        self.errors = errors

    def _fail(self, key: str, message: str) -> None:
        self.errors.append(f"{self.name}.{key}: {message}")

    def number(self, key, default=None, *, minimum=None, positive=False):
        value = self.table.get(key, default)
        if value is None:
            return None
        if not _is_number(value):
            self._fail(key, "expected a number")
            return default
        value = float(value)
        if positive and value <= 0:
            self._fail(key, "must be > 0")
        elif minimum is not None and value < minimum:
            self._fail(key, f"must be >= {minimum}")
        return value

    def integer(self, key, default=None, *, minimum=None):
        value = self.table.get(key, default)
        if value is None:
            return None
        if not isinstance(value, int) or isinstance(value, bool):
            self._fail(key, "expected an integer")
            return default
        if minimum is not None and value < minimum:
            self._fail(key, f"must be >= {minimum}")
        return int(value)

    def boolean(self, key, default):
        value = self.table.get(key, default)
        if not isinstance(value, bool):
            self._fail(key, "expected true or false")
            return default
        return value

    def choice(self, key, options, default=None):
        value = self.table.get(key, default)
        if value is None:
            return None
        if value not in options:
            self._fail(key, f"expected one of {', '.join(options)}")
            return default
        return value

    def vector(self, key, default=None):
        value = self.table.get(key, default)
        if value is None:
            return None
        if isinstance(value, (list, tuple)) and len(value) == 3 and all(
            _is_number(v) for v in value
        ):
            return tuple(float(v) for v in value)
        self._fail(key, "expected a 3-vector [x, y, z]")
        return default

    def number_list(self, key, default=None, *, positive=False):
        value = self.table.get(key, default)
        if value is None:
            return None
        if not isinstance(value, (list, tuple)) or not value or not all(
            _is_number(v) for v in value
        ):
            self._fail(key, "expected a non-empty list of numbers")
            return default
        out = [float(v) for v in value]
        if positive and any(v <= 0 for v in out):
            self._fail(key, "all entries must be > 0")
        return out


def _check_unknown(name: str, table: dict, allowed: set, errors: list[str]) -> None:
    for key in table:
        if key not in allowed:
            errors.append(f"{name}.{key}: unknown key")


def _resolve_system(
    table: dict, preset_flag: str | None, errors: list[str]
) -> SystemConfig | None:
    sec = _Section("system", table, errors)
    _check_unknown("system", table, _SYSTEM_KEYS, errors)

    preset = preset_flag or table.get("preset")
    if preset is not None and preset not in PRESET_NAMES:
        errors.append(
            f"system.preset: unknown preset {preset!r}; "
            f"available: {', '.join(PRESET_NAMES)}"
        )
        return None
    base = preset_config(preset) if preset else None

    mu1 = sec.vector("mu1_debye", None if base is None else tuple(base.geometry.mu1))
    mu2 = sec.vector("mu2_debye", None if base is None else tuple(base.geometry.mu2))
    r_vec = sec.vector("r_nm", None if base is None else tuple(base.geometry.r_vec))
    omega_s_ev = sec.number(
        "omega_s_ev",
        1.8 if base is None else base.geometry.omega_s_ev,
        positive=True,
    )
    for key, value in (("mu1_debye", mu1), ("mu2_debye", mu2), ("r_nm", r_vec)):
        if value is None:
            errors.append(
                f"system.{key}: required unless a preset supplies the geometry"
            )
    base_bath = base.bath if base is not None else VibrationalBath(5.0, 90.0, 300.0)
    lambda0 = sec.number("lambda0_mev", base_bath.lambda0, minimum=0.0)
    omega_c = sec.number("omega_c_mev", base_bath.omega_c, positive=True)
    temperature = sec.number("temperature_k", base_bath.temperature, minimum=0.0)

    hf_modes: Any = table.get("hf_modes", [list(m) for m in base_bath.hf_modes])
    if not isinstance(hf_modes, (list, tuple)) or not all(
        isinstance(m, (list, tuple)) and len(m) == 3 and all(_is_number(v) for v in m)
        for m in hf_modes
    ):
        errors.append(
            "system.hf_modes: expected a list of [alpha, omega_mev, width_mev] triples"
        )
        hf_modes = []
    hf_modes = tuple(tuple(float(v) for v in m) for m in hf_modes)

    if base is not None:
        d_opt_t = base.optical_temperature
        d_pump = base.pump_rate
        d_scheme = base.pump_scheme
        d_pdir = base.pump_direction
        d_nr = base.nonradiative_rate
        d_eea = base.eea_rate
        d_sec = base.secular
        d_lamb = base.lamb_shifts
        d_phase = base.propagation_phases
    else:
        fields = SystemConfig.__dataclass_fields__
        d_opt_t = fields["optical_temperature"].default
        d_pump = fields["pump_rate"].default
        d_scheme = fields["pump_scheme"].default
        d_pdir = fields["pump_direction"].default
        d_nr = fields["nonradiative_rate"].default
        d_eea = fields["eea_rate"].default
        d_sec = fields["secular"].default
        d_lamb = fields["lamb_shifts"].default
        d_phase = fields["propagation_phases"].default

    optical_temperature = sec.number("optical_temperature_k", d_opt_t, positive=True)
    pump_rate = sec.number("pump_rate_gamma", d_pump, minimum=0.0)
    pump_scheme = sec.choice("pump_scheme", ("mode", "isotropic"), d_scheme)
    pump_direction = sec.vector(
        "pump_direction", None if d_pdir is None else tuple(d_pdir)
    )
    nonradiative = sec.number("nonradiative_rate_gamma", d_nr, minimum=0.0)
    eea = sec.number("eea_rate_gamma", d_eea, minimum=0.0)
    secular = sec.boolean("secular", d_sec)
    lamb_shifts = sec.boolean("lamb_shifts", d_lamb)
    propagation_phases = sec.boolean("propagation_phases", d_phase)

    if errors:
        return None
    try:
        geometry = DimerGeometry(
            mu1=mu1, mu2=mu2, r_vec=r_vec, omega_s_ev=omega_s_ev
        )
        bath = VibrationalBath(
            lambda0=lambda0,
            omega_c=omega_c,
            temperature=temperature,
            hf_modes=hf_modes,
        )
        return SystemConfig(
            geometry=geometry,
            bath=bath,
            optical_temperature=optical_temperature,
            pump_rate=pump_rate,
            pump_scheme=pump_scheme,
            pump_direction=pump_direction,
            nonradiative_rate=nonradiative,
            eea_rate=eea,
            secular=secular,
            lamb_shifts=lamb_shifts,
            propagation_phases=propagation_phases,
        )
    except (ValueError, TypeError) as exc:
        errors.append(f"system: {exc}")
        return None


def _resolve_observable(table: dict, errors: list[str]) -> dict[str, Any]:
    kind = table.get("kind", "g2")
    if kind not in OBSERVABLE_KINDS:
        errors.append(
            f"observable.kind: expected one of {', '.join(OBSERVABLE_KINDS)}"
        )
        return {"kind": None}
    allowed = _OBSERVABLE_KEYS[kind] | {"kind"}
    _check_unknown("observable", table, allowed, errors)
    sec = _Section("observable", table, errors)
    out: dict[str, Any] = {"kind": kind}

    if kind in ("intensity", "g2", "ensemble", "irf-sweep"):
        out["tau_max_ps"] = sec.number("tau_max_ps", 6000.0, positive=True)
        out["tau_points"] = sec.integer("tau_points", 301, minimum=2)
    if kind == "intensity":
        out["direction"] = sec.vector("direction", None)
    elif kind in ("g2", "ensemble", "irf-sweep", "temperature-sweep"):
        out["direction"] = sec.vector("direction", (0.0, 0.0, 1.0))
        out["direction2"] = sec.vector("direction2", None)
    if kind == "spectrum":
        out["tau_max_ps"] = sec.number("tau_max_ps", 30.0, positive=True)
        out["dt_ps"] = sec.number("dt_ps", 0.002, positive=True)
        out["omega_min_mev"] = sec.number("omega_min_mev", -100.0)
        out["omega_max_mev"] = sec.number("omega_max_mev", 50.0)
        out["domega_mev"] = sec.number("domega_mev", 0.25, positive=True)
        if (
            out["omega_min_mev"] is not None
            and out["omega_max_mev"] is not None
            and out["omega_min_mev"] >= out["omega_max_mev"]
        ):
            errors.append("observable.omega_min_mev: must be < omega_max_mev")
    if kind == "temperature-sweep":
        out["temperatures_k"] = sec.number_list(
            "temperatures_k",
            [5.0, 30.0, 75.0, 150.0, 225.0, 300.0],
            positive=True,
        )
    if kind == "irf-sweep":
        out["irf_fwhm_ps"] = sec.number_list(
            "irf_fwhm_ps", [50.0, 100.0, 200.0], positive=True
        )
    if kind == "angle-sweep":
        out["sweep"] = sec.choice("sweep", ("polar", "azimuthal"), "polar")
        out["angle_points"] = sec.integer("angle_points", 181, minimum=2)
        default_fixed = 0.0 if out["sweep"] == "polar" else 0.5 * math.pi
        out["fixed_angle_rad"] = sec.number("fixed_angle_rad", default_fixed)
    return out


def _resolve_disorder(
    table: dict | None,
    observable: dict[str, Any],
    seed: int,
    errors: list[str],
) -> DisorderSpec | None:
    kind = observable.get("kind")
    if kind != "ensemble":
        if table:
            errors.append(
                "disorder: section is only valid for observable kind 'ensemble'"
            )
        return None
    if not table:
        errors.append("disorder: section required for observable kind 'ensemble'")
        return None
    _check_unknown("disorder", table, _DISORDER_KEYS, errors)
    sec = _Section("disorder", table, errors)
    kappa_orient = sec.number("kappa_orient", None, positive=True)
    n_samples = sec.integer("n_samples", None, minimum=1)
    if kappa_orient is None and "kappa_orient" not in table:
        errors.append("disorder.kappa_orient: required")
    if n_samples is None and "n_samples" not in table:
        errors.append("disorder.n_samples: required")
    disorder_target = sec.choice("disorder_target", ("second", "both"), "second")
    detection_scheme = sec.choice(
        "detection_scheme",
        ("fixed", "first-uniform-second-vmf", "both-uniform"),
        "fixed",
    )
    kappa_detect = sec.number("kappa_detect", 50.0, positive=True)
    detection_direction = sec.vector(
        "detection_direction", observable.get("direction", (0.0, 0.0, 1.0))
    )
    detection_direction2 = sec.vector(
        "detection_direction2", observable.get("direction2")
    )
    if errors:
        return None
    try:
        return DisorderSpec(
            kappa_orient=kappa_orient,
            n_samples=n_samples,
            seed=seed,
            disorder_target=disorder_target,
            detection_scheme=detection_scheme,
            kappa_detect=kappa_detect,
            detection_direction=detection_direction,
            detection_direction2=detection_direction2,
        )
    except (ValueError, TypeError) as exc:
        errors.append(f"disorder: {exc}")
        return None


def resolve_run(
    raw: dict,
    *,
    preset_flag: str | None = None,
    seed_flag: int | None = None,
) -> ResolvedRun:
    """Validate a raw config dict and build the domain objects.

    Raises :class:`ConfigError` carrying every problem found, each
    message prefixed with the offending ``section.key``.
    """
    errors: list[str] = []
    for key in raw:
        if key not in _SECTIONS | _IGNORED_SECTIONS:
            errors.append(f"{key}: unknown section")
    for key in _SECTIONS:
        if key in raw and not isinstance(raw[key], dict):
            errors.append(f"{key}: expected a table/object")
            raise ConfigError(errors)

    system_table = dict(raw.get("system", {}))
    observable_table = dict(raw.get("observable", {}))
    disorder_table = raw.get("disorder")
    output_table = dict(raw.get("output", {}))

    if preset_flag is None and "preset" not in system_table:
        if not {"mu1_debye", "mu2_debye", "r_nm"} & set(system_table):
            errors.append(
                "system: provide a preset (--preset or system.preset) or an "
                "explicit geometry (mu1_debye, mu2_debye, r_nm)"
            )

    out_sec = _Section("output", output_table, errors)
    _check_unknown("output", output_table, _OUTPUT_KEYS, errors)
    prefix = output_table.get("prefix", "run")
    if not isinstance(prefix, str) or not prefix or os.sep in prefix:
        errors.append("output.prefix: expected a plain file-name string")
        prefix = "run"
    seed = out_sec.integer("seed", 0, minimum=0)
    if seed_flag is not None:
        if seed_flag < 0:
            errors.append("--seed: must be >= 0")
        seed = seed_flag

    system = _resolve_system(system_table, preset_flag, errors)
    observable = _resolve_observable(observable_table, errors)
    disorder = _resolve_disorder(
        disorder_table, observable, seed if seed is not None else 0, errors
    )

    if errors:
        raise ConfigError(errors)
    assert system is not None
    return ResolvedRun(
        system=system,
        observable=observable,
        disorder=disorder,
        prefix=prefix,
        seed=int(seed),
    )


# ----------------------------------------------------------------------
# Execution


@lru_cache(maxsize=16)
def _phonon_tables(bath: VibrationalBath):
    """Vibrational tables keyed by bath parameters (they dominate setup cost)."""
    return build_phonon_functions(bath)


def _tau_grid(observable: dict[str, Any]) -> np.ndarray:
    return np.linspace(0.0, observable["tau_max_ps"], observable["tau_points"])


def _sweep_direction(sweep: str, fixed: float, angle: float) -> tuple[float, float, float]:
    if sweep == "polar":  # angle = theta from +z, fixed = azimuth phi
        theta, phi = angle, fixed
    else:  # angle = azimuth phi, fixed = polar theta
        theta, phi = fixed, angle
    return (
        math.sin(theta) * math.cos(phi),
        math.sin(theta) * math.sin(phi),
        math.cos(theta),
    )


def execute_run(
    run: ResolvedRun, *, threads: int = 1
) -> tuple[list[tuple[str, np.ndarray]], dict[str, Any], LiouvillianBundle]:
    """Run the configured pipeline.

    Returns the output table as (column name, values) pairs, a dict of
    scalar results for the JSON bundle, and the assembled base system.
    """
    obs = run.observable
    kind = obs["kind"]
    bundle = assemble(run.system, _phonon_tables(run.system.bath))
    results: dict[str, Any] = {}

    if kind == "intensity":
        quiet = assemble(replace(run.system, pump_rate=0.0), bundle.phonon)
        taus = _tau_grid(obs)
        ee = basis_state("ee")
        states = Propagator(quiet.matrix).propagate(np.outer(ee, ee.conj()), taus)
        direction = obs.get("direction")
        if direction is None:
            values = np.array([total_intensity(quiet, s) for s in states])
            columns = [("time_ps", taus), ("intensity_gamma", values)]
        else:
            values = np.array(
                [directional_intensity(quiet, s, direction) for s in states]
            )
            columns = [("time_ps", taus), ("intensity_gamma_per_sr", values)]
        results["pump_rate_forced_zero"] = True

    elif kind == "g2":
        taus = _tau_grid(obs)
        propagator = Propagator(bundle.matrix)
        rho_ss = propagator.steady_state()
        curve = g2_curve(
            bundle,
            taus,
            obs["direction"],
            obs["direction2"],
            rho_ss=rho_ss,
            propagator=propagator,
        )
        results["g2_zero_delay"] = g2_zero_delay(
            bundle, rho_ss, obs["direction"], obs["direction2"]
        )
        columns = [("tau_ps", curve.taus), ("g2", curve.values)]

    elif kind == "spectrum":
        spectrum = absorption_spectrum(
            bundle,
            tau_max=obs["tau_max_ps"],
            dt=obs["dt_ps"],
            omega_min=obs["omega_min_mev"],
            omega_max=obs["omega_max_mev"],
            domega=obs["domega_mev"],
        )
        results["peaks_mev"] = [list(p) for p in spectrum_peaks(spectrum)]
        columns = [("omega_mev", spectrum.omega), ("absorption_arb", spectrum.values)]

    elif kind == "temperature-sweep":
        temps = np.array(obs["temperatures_k"])
        values = np.empty(temps.size)
        for i, temp in enumerate(temps):
            cfg = replace(run.system, bath=replace(run.system.bath, temperature=float(temp)))
            b = assemble(cfg, _phonon_tables(cfg.bath))
            rho_ss = Propagator(b.matrix).steady_state()
            values[i] = g2_zero_delay(b, rho_ss, obs["direction"], obs["direction2"])
        columns = [("temperature_k", temps), ("g2_zero_delay", values)]

    elif kind == "ensemble":
        assert run.disorder is not None
        taus = _tau_grid(obs)
        result = ensemble_g2(
            run.system, run.disorder, taus, phonon=bundle.phonon, threads=threads
        )
        results["n_accepted"] = result.n_accepted
        results["n_failed"] = result.n_failed
        results["sample_hash"] = result.config_hash
        columns = [
            ("tau_ps", result.taus),
            ("g2_mean", result.mean),
            ("g2_stderr", result.standard_error),
        ]

    elif kind == "irf-sweep":
        taus = _tau_grid(obs)
        propagator = Propagator(bundle.matrix)
        rho_ss = propagator.steady_state()
        curve = g2_curve(
            bundle,
            taus,
            obs["direction"],
            obs["direction2"],
            rho_ss=rho_ss,
            propagator=propagator,
        )
        columns = [("tau_ps", curve.taus), ("g2", curve.values)]
        for fwhm in obs["irf_fwhm_ps"]:
            blurred = convolve_instrument_response(curve, fwhm)
            resampled = np.interp(taus, blurred.taus, blurred.values)
            columns.append((f"g2_irf{fwhm:g}ps", resampled))

    elif kind == "angle-sweep":
        span = math.pi if obs["sweep"] == "polar" else 2.0 * math.pi
        angles = np.linspace(0.0, span, obs["angle_points"])
        rho_ss = Propagator(bundle.matrix).steady_state()
        g2_values = np.empty(angles.size)
        intensities = np.empty(angles.size)
        for i, angle in enumerate(angles):
            direction = _sweep_direction(obs["sweep"], obs["fixed_angle_rad"], angle)
            intensities[i] = directional_intensity(bundle, rho_ss, direction)
            try:
                g2_values[i] = g2_zero_delay(bundle, rho_ss, direction)
            except ValueError:
                g2_values[i] = math.nan  # optically dark direction
        columns = [
            ("angle_rad", angles),
            ("g2_zero_delay", g2_values),
            ("intensity_gamma_per_sr", intensities),
        ]

    else:  # pragma: no cover - kinds are validated upstream
        raise RuntimeError(f"unhandled observable kind {kind!r}")

    return columns, results, bundle


# ----------------------------------------------------------------------
# Serialization


def _format_number(value: float) -> str:
    return "%.17g" % value


def render_csv(columns: list[tuple[str, np.ndarray]]) -> bytes:
    """UTF-8, LF-terminated CSV with 17 significant digits per value."""
    names = [name for name, _ in columns]
    arrays = [np.asarray(values, dtype=float) for _, values in columns]
    length = arrays[0].size
    if any(a.size != length for a in arrays):
        raise RuntimeError("output columns have mismatched lengths")
    lines = [",".join(names)]
    for i in range(length):
        lines.append(",".join(_format_number(a[i]) for a in arrays))
    return ("\n".join(lines) + "\n").encode("utf-8")


def _system_section(config: SystemConfig, bundle: LiouvillianBundle) -> dict[str, Any]:
    geom = config.geometry
    pump_direction = bundle.rates.pump_direction
    return {
        "mu1_debye": [float(v) for v in geom.mu1],
        "mu2_debye": [float(v) for v in geom.mu2],
        "r_nm": [float(v) for v in geom.r_vec],
        "omega_s_ev": geom.omega_s_ev,
        "lambda0_mev": config.bath.lambda0,
        "omega_c_mev": config.bath.omega_c,
        "temperature_k": config.bath.temperature,
        "hf_modes": [list(mode) for mode in config.bath.hf_modes],
        "optical_temperature_k": config.optical_temperature,
        "pump_rate_gamma": config.pump_rate,
        "pump_scheme": config.pump_scheme,
        "pump_direction": None
        if pump_direction is None
        else [float(v) for v in pump_direction],
        "nonradiative_rate_gamma": config.nonradiative_rate,
        "eea_rate_gamma": config.eea_rate,
        "secular": config.secular,
        "lamb_shifts": config.lamb_shifts,
        "propagation_phases": config.propagation_phases,
    }


def _disorder_section(spec: DisorderSpec) -> dict[str, Any]:
    return {
        "kappa_orient": spec.kappa_orient,
        "n_samples": spec.n_samples,
        "disorder_target": spec.disorder_target,
        "detection_scheme": spec.detection_scheme,
        "kappa_detect": spec.kappa_detect,
        "detection_direction": list(spec.detection_direction),
        "detection_direction2": None
        if spec.detection_direction2 is None
        else list(spec.detection_direction2),
    }


def _observable_section(observable: dict[str, Any]) -> dict[str, Any]:
    out = {}
    for key, value in observable.items():
        if isinstance(value, tuple):
            value = list(value)
        out[key] = value
    return out


def _derived_section(bundle: LiouvillianBundle) -> dict[str, Any]:
    rates = bundle.rates
    return {
        "forster_j_mev": rates.forster_j,
        "j_prime_mev": rates.j_prime,
        "omega_s_prime_mev": rates.omega_s_prime,
        "kappa0": rates.kappa0,
        "kappa_h": rates.kappa_h,
        "kappa_total": rates.kappa_total,
        "lambda_total_mev": rates.lambda_total,
        "gamma_ref_per_ps": rates.gamma_ref,
        "n_optical": rates.n_optical,
        "radiative_dressing_same": rates.radiative_dressing_same,
        "radiative_dressing_cross": rates.radiative_dressing_cross,
    }


def _write_atomic(path: str, data: bytes) -> None:
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)


# ----------------------------------------------------------------------
# Subcommands


def _resolve_threads(flag: int | None) -> int:
    if flag is not None:
        value = flag
    else:
        env = os.environ.get("DIMERCORR_THREADS")
        if env is None:
            return 1
        try:
            value = int(env)
        except ValueError:
            raise ConfigError(
                f"DIMERCORR_THREADS: expected an integer, got {env!r}"
            ) from None
    if value < 1:
        raise ConfigError("threads: must be >= 1")
    return value


def _cmd_run(args: argparse.Namespace) -> int:
    if args.config is None and args.preset is None:
        raise ConfigError("provide --config and/or --preset")
    raw = load_raw_config(args.config) if args.config else {}
    run = resolve_run(raw, preset_flag=args.preset, seed_flag=args.seed)
    threads = _resolve_threads(args.threads)

    start = time.perf_counter()
    columns, results, bundle = execute_run(run, threads=threads)
    walltime = time.perf_counter() - start

    os.makedirs(args.out, exist_ok=True)
    csv_name = f"{run.prefix}.csv"
    json_name = f"{run.prefix}.json"
    files_written = [csv_name, json_name] if args.format == "csv" else [json_name]
    bundle_doc: dict[str, Any] = {
        "system": _system_section(run.system, bundle),
        "observable": _observable_section(run.observable),
        "output": {"prefix": run.prefix, "seed": run.seed},
        "derived": _derived_section(bundle),
        "results": results,
        "provenance": {
            "version": __version__,
            "seed": run.seed,
            "threads": threads,
            "walltime_s": walltime,
            "format": args.format,
            "files": files_written,
        },
    }
    if run.disorder is not None:
        bundle_doc["disorder"] = _disorder_section(run.disorder)
    if args.format == "json":
        bundle_doc["data"] = {
            name: [float(v) for v in np.asarray(values, dtype=float)]
            for name, values in columns
        }

    if args.format == "csv":
        _write_atomic(os.path.join(args.out, csv_name), render_csv(columns))
    _write_atomic(
        os.path.join(args.out, json_name),
        json.dumps(bundle_doc, indent=2).encode("utf-8") + b"\n",
    )
    print(f"wrote {', '.join(files_written)} in {args.out} ({walltime:.2f} s)")
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    raw = load_raw_config(args.config)
    run = resolve_run(raw, preset_flag=args.preset, seed_flag=args.seed)
    j = forster_coupling(run.system.geometry)
    ensemble_note = (
        f", ensemble of {run.disorder.n_samples}" if run.disorder is not None else ""
    )
    print(
        f"valid: kind={run.observable['kind']}{ensemble_note}, "
        f"J={j:+.3f} meV, seed={run.seed}, prefix={run.prefix!r}"
    )
    return 0


def _cmd_list_presets(_: argparse.Namespace) -> int:
    for name in PRESET_NAMES:
        print(preset_summary(name))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dimercorr",
        description="Photon-correlation simulations of a vibrationally "
        "dressed molecular dimer.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a run and write CSV/JSON outputs")
    run.add_argument("--config", help="TOML or JSON configuration file")
    run.add_argument("--out", default=".", help="output directory (default: .)")
    run.add_argument("--seed", type=int, help="override output.seed")
    run.add_argument(
        "--threads",
        type=int,
        help="worker threads for ensemble runs "
        "(default: DIMERCORR_THREADS or 1)",
    )
    run.add_argument(
        "--preset",
        choices=PRESET_NAMES,
        help="named base system; overrides system.preset in the file",
    )
    run.add_argument(
        "--format",
        choices=("csv", "json"),
        default="csv",
        help="csv writes table + JSON bundle; json embeds the table in the bundle",
    )
    run.set_defaults(func=_cmd_run)

    validate = sub.add_parser("validate", help="check a configuration file")
    validate.add_argument("--config", required=True)
    validate.add_argument("--preset", choices=PRESET_NAMES)
    validate.add_argument("--seed", type=int)
    validate.set_defaults(func=_cmd_validate)

    listp = sub.add_parser("list-presets", help="show the named example systems")
    listp.set_defaults(func=_cmd_list_presets)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        for message in exc.messages:
            print(f"config error: {message}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure after a valid config
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
