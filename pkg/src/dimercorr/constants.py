"""Physical constants and unit conversions.

Internal unit system
====================

=============  ======================================
quantity       unit
=============  ======================================
energy         meV
time           ps
rate           1/ps
length         nm
dipole moment  Debye
temperature    K
=============  ======================================

Angular frequencies are stored as energies (meV); divide by ``HBAR``
(meV*ps) wherever a genuine 1/ps frequency is needed.  All SI constants
are 2018 CODATA exact values.
"""

# --- internal-unit constants -------------------------------------------------

#: Reduced Planck constant [meV ps].
HBAR = 0.6582119569

#: Boltzmann constant [meV / K].
KB = 0.08617333262

# --- SI constants (used only inside unit conversions) ------------------------

#: Elementary charge [C].
E_CHARGE = 1.602176634e-19

#: Vacuum permittivity [F / m].
EPSILON_0 = 8.8541878128e-12

#: Speed of light [m / s].
C_LIGHT = 2.99792458e8

#: Reduced Planck constant [J s].
HBAR_SI = 1.054571817e-34

#: One Debye [C m].
DEBYE = 3.33564e-30

#: One nanometre [m].
NM = 1.0e-9

#: One milli-electronvolt [J].
MEV = 1.0e-3 * E_CHARGE

#: One picosecond [s].
PS = 1.0e-12


def thermal_occupation(omega_mev: float, temperature_k: float) -> float:
    """Bose-Einstein occupation n(omega) at the given temperature.

    Args:
        omega_mev: Mode energy in meV (must be positive).
        temperature_k: Temperature in kelvin; 0 K returns 0.

    Returns:
        The occupation number 1 / (exp(omega / kT) - 1).
    """
    import math

    if omega_mev <= 0.0:
        raise ValueError(f"thermal_occupation needs omega > 0, got {omega_mev}")
    if temperature_k <= 0.0:
        return 0.0
    x = omega_mev / (KB * temperature_k)
    # expm1 keeps precision for x << 1
    return 1.0 / math.expm1(x)


def spontaneous_rate_per_ps(omega_mev: float, dipole_debye: float) -> float:
    """Free-space spontaneous emission rate omega^3 mu^2 / (3 pi eps0 hbar c^3).

    Args:
        omega_mev: Transition energy in meV.
        dipole_debye: Transition dipole magnitude in Debye.

    Returns:
        Emission rate in 1/ps.  For 1.8 eV and 10 D this is ~9.6e-5/ps
        (a ~10 ns lifetime).
    """
    omega_si = abs(omega_mev) * MEV / HBAR_SI  # rad/s
    mu_si = dipole_debye * DEBYE
    rate_si = omega_si**3 * mu_si**2 / (
        3.0 * 3.141592653589793 * EPSILON_0 * HBAR_SI * C_LIGHT**3
    )
    return rate_si * PS
