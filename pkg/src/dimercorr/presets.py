"""Named example configurations for common dimer arrangements.

Every preset shares the same monomer parameters (10 Debye dipoles,
2 nm separation along z, 1.8 eV bare transition, a 5 meV / 90 meV
super-Ohmic vibrational continuum at 300 K, a 5800 K photon field, and
unit pump rate in reference-rate units); they differ only in the
relative dipole orientation:

==============  =========================================  ============
name            dipole arrangement                         coupling J
==============  =========================================  ============
h-dimer         side by side, both along x                 positive
j-dimer         head to tail, both along z                 negative
orthogonal      crossed, x and y                           zero
dimer-45        in-plane, 45 degrees apart                 positive
magic-angle     parallel, tilted at arccos(1/sqrt(3))      zero
==============  =========================================  ============
"""

from __future__ import annotations

import math

from .geometry import DimerGeometry, forster_coupling
from .liouvillian import SystemConfig
from .vibrational import VibrationalBath

__all__ = ["PRESET_NAMES", "preset_config", "preset_geometry", "preset_summary"]

_DIPOLE_D = 10.0
_SEPARATION_NM = (0.0, 0.0, 2.0)
_OMEGA_S_EV = 1.8
_MAGIC_COS = 1.0 / math.sqrt(3.0)
_MAGIC_SIN = math.sqrt(2.0 / 3.0)

_SQ2 = math.sqrt(0.5)

_PRESET_DIPOLES: dict[str, tuple[tuple[float, float, float], tuple[float, float, float]]] = {
    "h-dimer": ((_DIPOLE_D, 0.0, 0.0), (_DIPOLE_D, 0.0, 0.0)),
    "j-dimer": ((0.0, 0.0, _DIPOLE_D), (0.0, 0.0, _DIPOLE_D)),
    "orthogonal": ((_DIPOLE_D, 0.0, 0.0), (0.0, _DIPOLE_D, 0.0)),
    "dimer-45": (
        (_DIPOLE_D, 0.0, 0.0),
        (_DIPOLE_D * _SQ2, _DIPOLE_D * _SQ2, 0.0),
    ),
    "magic-angle": (
        (_DIPOLE_D * _MAGIC_SIN, 0.0, _DIPOLE_D * _MAGIC_COS),
        (_DIPOLE_D * _MAGIC_SIN, 0.0, _DIPOLE_D * _MAGIC_COS),
    ),
}

PRESET_NAMES: tuple[str, ...] = tuple(_PRESET_DIPOLES)


def preset_geometry(name: str) -> DimerGeometry:
    """Dimer geometry of the named preset."""
    try:
        mu1, mu2 = _PRESET_DIPOLES[name]
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}"
        ) from None
    return DimerGeometry(mu1=mu1, mu2=mu2, r_vec=_SEPARATION_NM, omega_s_ev=_OMEGA_S_EV)


def preset_config(name: str) -> SystemConfig:
    """Complete system configuration of the named preset."""
    return SystemConfig(
        geometry=preset_geometry(name),
        bath=VibrationalBath(lambda0=5.0, omega_c=90.0, temperature=300.0),
    )


def preset_summary(name: str) -> str:
    """One-line human description with the resolved coupling."""
    geom = preset_geometry(name)
    j = forster_coupling(geom)
    angle = math.degrees(math.acos(max(-1.0, min(1.0, geom.alignment_factor))))
    return (
        f"{name}: J = {j:+.2f} meV, dipole angle {angle:.1f} deg, "
        f"|mu| = {_DIPOLE_D:g} D, separation 2 nm along z"
    )
