"""Physical QES points: the magnetic fields at which the spectrum is exact.

Each branch eta of (j, |m|) fixes the effective oscillator frequency
hbar*omega = Ha* / (2 eta).  Since omega^2 = omega_0^2 + (omega_c/2)^2, the
dot's confinement omega_0 then determines the cyclotron frequency, and with
it the field B, as long as omega >= omega_0.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields

from .algebra import eta_values
from .units import MaterialParams, cyclotron_to_tesla, derive_scales
from .wavefunction import coefficients


class NoQesField(ValueError):
    """No real magnetic field reaches the requested QES frequency."""

    def __init__(self, j: int, m: int, n_r: int, eta: float, omega: float, omega0: float):
        self.j, self.m, self.n_r, self.eta = j, m, n_r, eta
        self.omega, self.omega0 = omega, omega0
        super().__init__(
            f"(j={j}, m={m}, n_r={n_r}): QES frequency {omega:.6g} is below the "
            f"confinement frequency {omega0:.6g}; no real field exists"
        )


def relative_energy(j: int, m: int, omega_ha: float, omega_c_ha: float) -> float:
    """Relative-motion energy (j + |m| + 1) omega + m omega_c / 2."""
    return (j + abs(m) + 1) * omega_ha + m * omega_c_ha / 2


@dataclass(frozen=True)
class CmState:
    N: int
    M: int
    e_R_ha: float


def cm_energy(N: int, M: int, omega_ha: float, omega_c_ha: float) -> CmState:
    """Centre-of-mass oscillator level (2N + |M| + 1) omega + M omega_c / 2."""
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    return CmState(N, M, (2 * N + abs(M) + 1) * omega_ha + M * omega_c_ha / 2)


def total_energy(e_r: float, e_R: float) -> float:
    return 2 * e_r + e_R / 2


def dot_size(omega_ha: float, params: MaterialParams) -> float:
    """Oscillator length sqrt(hbar / (m* omega)) in nm."""
    if not omega_ha > 0:
        raise ValueError(f"omega must be positive, got {omega_ha}")
    return derive_scales(params).bohr_nm / math.sqrt(omega_ha)


def cyclotron_from_effective(omega: float, omega0: float) -> float:
    """omega_c = 2 sqrt(omega^2 - omega_0^2); caller guarantees omega >= omega_0."""
    return 2.0 * math.sqrt(max(0.0, (omega - omega0) * (omega + omega0)))


@dataclass(frozen=True)
class QesSolution:
    j: int
    m: int
    n_r: int
    eta: float
    omega_ha: float
    omega_c_ha: float
    b_tesla: float
    e_r_ha: float
    dot_size_nm: float
    coeffs: tuple[float, ...]
    # laboratory-unit copies of the energies
    omega_mev: float = 0.0
    omega_c_mev: float = 0.0
    e_r_mev: float = 0.0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["coeffs"] = list(self.coeffs)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> QesSolution:
        names = {f.name for f in fields(cls)}
        kw = {k: v for k, v in d.items() if k in names}
        kw["coeffs"] = tuple(kw["coeffs"])
        return cls(**kw)


def qes_point(j: int, m: int, n_r: int, params: MaterialParams) -> QesSolution:
    if j < 1:
        raise ValueError(f"j must be >= 1, got {j}")
    branches = eta_values(j, abs(m))
    if not 0 <= n_r < len(branches):
        raise ValueError(f"(j={j}, m={m}) has no branch n_r={n_r}; valid: 0..{len(branches) - 1}")
    eta = branches[n_r].value
    scales = derive_scales(params)
    omega = 1.0 / (2.0 * eta)
    if omega < scales.omega0_ha:
        raise NoQesField(j, m, n_r, eta, omega, scales.omega0_ha)
    omega_c = cyclotron_from_effective(omega, scales.omega0_ha)
    e_r = relative_energy(j, m, omega, omega_c)
    ha = scales.hartree_meV
    return QesSolution(
        j=j,
        m=m,
        n_r=n_r,
        eta=eta,
        omega_ha=omega,
        omega_c_ha=omega_c,
        b_tesla=cyclotron_to_tesla(omega_c * ha, params),
        e_r_ha=e_r,
        dot_size_nm=dot_size(omega, params),
        coeffs=tuple(coefficients(j, m, omega)),
        omega_mev=omega * ha,
        omega_c_mev=omega_c * ha,
        e_r_mev=e_r * ha,
    )


def qes_points(j: int, m: int, params: MaterialParams) -> list[QesSolution | NoQesField]:
    """Every branch of (j, m): a solution, or the NoQesField explaining its absence."""
    out: list[QesSolution | NoQesField] = []
    for branch in eta_values(j, abs(m)):
        try:
            out.append(qes_point(j, m, branch.n_r, params))
        except NoQesField as exc:
            out.append(exc)
    return out


# -- replication of the published table --------------------------------------


def fit_table_coupling(omega_c: float, omega0: float, eta: float = 1.0) -> float:
    """lambda^2 = eta * omega, with omega recovered from one (omega_c, omega0) pair."""
    return eta * math.sqrt((omega_c / 2) ** 2 + omega0**2)


@dataclass(frozen=True)
class TableCalibration:
    """Coupling and confinement in the (undocumented) unit of the published table.

    Never used in physical mode.
    """

    lambda_sq: float = 0.9350545
    omega0: float = 0.004
    provenance: str = field(
        default=(
            "lambda_sq fitted once from the published row j=1, m=0 "
            "(hbar*omega_c = 1.870092) with hbar*omega_0 = 0.004 via "
            "omega = sqrt((omega_c/2)^2 + omega_0^2), eta = 1"
        )
    )


TABLE_CALIBRATION = TableCalibration()


@dataclass(frozen=True)
class TableRow:
    j: int
    m: int
    n_r: int
    eta: float
    omega: float
    omega_c: float
    e_r: float


def table_point(j: int, m: int, n_r: int, cal: TableCalibration = TABLE_CALIBRATION) -> TableRow:
    """QES point in table units: omega = lambda^2 / eta."""
    branches = eta_values(j, abs(m))
    if not 0 <= n_r < len(branches):
        raise ValueError(f"(j={j}, m={m}) has no branch n_r={n_r}")
    eta = branches[n_r].value
    omega = cal.lambda_sq / eta
    if omega < cal.omega0:
        raise NoQesField(j, m, n_r, eta, omega, cal.omega0)
    omega_c = cyclotron_from_effective(omega, cal.omega0)
    return TableRow(j, m, n_r, eta, omega, omega_c, relative_energy(j, m, omega, omega_c))
