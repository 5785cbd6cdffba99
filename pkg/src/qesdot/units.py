"""Effective atomic units for a parabolic quantum dot.

Everything inside the package works in units where hbar = m* = e^2/eps = 1.
The energy unit is the effective Hartree Ha* and the length unit the effective
Bohr radius a*.  Laboratory quantities (meV, nm, tesla) only appear at the
boundary, through :func:`derive_scales` and :func:`cyclotron_to_tesla`.
"""

from __future__ import annotations

from dataclasses import dataclass

# CODATA 2018
HARTREE_MEV = 27_211.386_245_988  # free-electron Hartree, meV
BOHR_NM = 0.052_917_721_090_3  # free-electron Bohr radius, nm
HBAR_EV_S = 6.582_119_569e-16  # eV*s
E_OVER_M0 = 1.758_820_010_76e11  # C/kg

# hbar * e / m0: cyclotron energy of a free electron at 1 T, in meV
HBAR_E_OVER_M0_MEV_PER_T = HBAR_EV_S * E_OVER_M0 * 1e3


@dataclass(frozen=True)
class MaterialParams:
    """Semiconductor constants plus the lateral confinement strength.

    ``confinement_energy`` is hbar*omega_0 in meV.
    """

    effective_mass_ratio: float
    dielectric_constant: float
    confinement_energy: float = 0.0

    def __post_init__(self):
        if not self.effective_mass_ratio > 0:
            raise ValueError(f"effective_mass_ratio must be > 0, got {self.effective_mass_ratio}")
        if not self.dielectric_constant >= 1:
            raise ValueError(f"dielectric_constant must be >= 1, got {self.dielectric_constant}")
        if not self.confinement_energy >= 0:
            raise ValueError(f"confinement_energy must be >= 0, got {self.confinement_energy}")


# name -> (m*/m0, eps)
PRESETS: dict[str, tuple[float, float]] = {
    "gaas": (0.067, 12.4),
}


def material(name: str, confinement_energy: float = 0.0) -> MaterialParams:
    try:
        mass, eps = PRESETS[name.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown material {name!r}; known: {sorted(PRESETS)}") from None
    return MaterialParams(mass, eps, confinement_energy)


@dataclass(frozen=True)
class Scales:
    hartree_meV: float
    bohr_nm: float
    omega0_ha: float


def derive_scales(params: MaterialParams) -> Scales:
    """Effective Hartree (meV), effective Bohr (nm) and hbar*omega_0 in Ha*."""
    hartree = HARTREE_MEV * params.effective_mass_ratio / params.dielectric_constant**2
    bohr = BOHR_NM * params.dielectric_constant / params.effective_mass_ratio
    return Scales(hartree, bohr, params.confinement_energy / hartree)


def cyclotron_to_tesla(omega_c_meV: float, params: MaterialParams) -> float:
    """Magnetic field B whose cyclotron energy hbar*e*B/m* equals ``omega_c_meV``."""
    if omega_c_meV < 0:
        raise ValueError(f"cyclotron energy must be >= 0, got {omega_c_meV}")
    return omega_c_meV * params.effective_mass_ratio / HBAR_E_OVER_M0_MEV_PER_T


def tesla_to_cyclotron(b_tesla: float, params: MaterialParams) -> float:
    """Inverse of :func:`cyclotron_to_tesla`, in meV."""
    return b_tesla * HBAR_E_OVER_M0_MEV_PER_T / params.effective_mass_ratio
