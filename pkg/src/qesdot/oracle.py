"""Finite-difference eigensolver for the relative radial equation.

Solves

    -u''/2 + [(m^2 - 1/4)/(2 r^2) + omega^2 r^2/2 + c/(2r)] u = eps u

on (0, r_max) with u(0) = u(r_max) = 0.  The equation is discretized in flux
form for R = u / sqrt(r),

    -(1/(2r)) (r R')' + m^2/(2 r^2) R + ...,

on the cell centres r_i = (i - 1/2) h.  The flux through r = 0 vanishes
identically, which keeps the scheme second order even for m = 0 where
u ~ sqrt(r); a grid of u values starting at r = h is only first order there.
The symmetrized matrix is tridiagonal and its lowest eigenvalues come from
bisection on the Sturm count (LAPACK ``stebz``).  Two grids, h and h/2, give
one Richardson step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

# Richardson error allowed per eigenvalue, as a fraction of its level spacing
SPACING_TOL = 1e-5


class ConvergenceFailure(RuntimeError):
    """The two-grid error estimate is too large for the level spacing."""


@dataclass(frozen=True)
class OracleConfig:
    r_max: float | None = None  # None: 12 / sqrt(omega)
    n_points: int = 4000  # coarse grid; the fine grid has twice as many
    coulomb_strength: float = 1.0
    n_states: int = 4

    def __post_init__(self):
        if self.r_max is not None and not self.r_max > 0:
            raise ValueError(f"r_max must be positive, got {self.r_max}")
        if self.n_points < 200:
            raise ValueError(f"n_points must be >= 200, got {self.n_points}")
        if not 1 <= self.n_states <= 10:
            raise ValueError(f"n_states must be in 1..10, got {self.n_states}")

    def box(self, omega: float) -> float:
        return self.r_max if self.r_max is not None else 12.0 / math.sqrt(omega)


@dataclass(frozen=True)
class OracleSpectrum:
    m: int
    omega_ha: float
    eigenvalues: tuple[float, ...]
    richardson_error: tuple[float, ...]


def radial_matrix(m: int, omega: float, n: int, r_max: float, coulomb_strength: float = 1.0):
    """Diagonal, off-diagonal and grid of the symmetric discrete operator."""
    h = r_max / n
    r = h * (np.arange(1, n + 1) - 0.5)
    r_out = r + h / 2
    r_in = r - h / 2
    # Dirichlet at r_max through a mirrored ghost cell (R_ghost = -R_n)
    r_out_eff = r_out.copy()
    r_out_eff[-1] *= 2
    potential = m * m / (2 * r * r) + 0.5 * omega * omega * r * r + coulomb_strength / (2 * r)
    diag = (r_out_eff + r_in) / (2 * r * h * h) + potential
    off = -r_out[:-1] / (2 * h * h) / np.sqrt(r[:-1] * r[1:])
    return diag, off, r


def sturm_count(diag: np.ndarray, off: np.ndarray, x: float) -> int:
    """Number of eigenvalues of the symmetric tridiagonal matrix below ``x``."""
    count = 0
    q = diag[0] - x
    if q < 0:
        count += 1
    for k in range(1, len(diag)):
        if q == 0:
            q = 1e-300
        q = diag[k] - x - off[k - 1] ** 2 / q
        if q < 0:
            count += 1
    return count


def fd_eigenvalues(m: int, omega: float, n: int, r_max: float, k: int, coulomb_strength: float = 1.0):
    diag, off, _ = radial_matrix(abs(m), omega, n, r_max, coulomb_strength)
    return eigh_tridiagonal(
        diag, off, eigvals_only=True, select="i", select_range=(0, k - 1), lapack_driver="stebz"
    )


def solve_radial(m: int, omega_ha: float, config: OracleConfig = OracleConfig()) -> OracleSpectrum:
    """Lowest ``config.n_states`` relative-motion energies (Zeeman shift excluded)."""
    if not omega_ha > 0:
        raise ValueError(f"omega must be positive, got {omega_ha}")
    r_max = config.box(omega_ha)
    k = config.n_states + 1  # one extra level so every state has a spacing
    args = (m, omega_ha)
    coarse = fd_eigenvalues(*args, config.n_points, r_max, k, config.coulomb_strength)
    fine = fd_eigenvalues(*args, 2 * config.n_points, r_max, k, config.coulomb_strength)
    extrapolated = (4 * fine - coarse) / 3
    error = np.abs(fine - coarse) / 3
    gaps = np.diff(extrapolated)
    spacing = np.minimum(np.r_[np.inf, gaps], np.r_[gaps, np.inf])
    bad = np.nonzero(error[: config.n_states] > SPACING_TOL * spacing[: config.n_states])[0]
    if bad.size:
        i = int(bad[0])
        raise ConvergenceFailure(
            f"state {i}: Richardson estimate {error[i]:.3e} exceeds "
            f"{SPACING_TOL:g} x spacing {spacing[i]:.3e}; increase n_points"
        )
    n = config.n_states
    return OracleSpectrum(m, omega_ha, tuple(extrapolated[:n].tolist()), tuple(error[:n].tolist()))


def convergence_ratio(m: int, omega_ha: float, config: OracleConfig = OracleConfig(), state: int = 0) -> float:
    """(E_h - E_{h/2}) / (E_{h/2} - E_{h/4}); close to 4 for a second-order scheme."""
    r_max = config.box(omega_ha)
    e = [
        fd_eigenvalues(m, omega_ha, n, r_max, state + 1, config.coulomb_strength)[state]
        for n in (config.n_points, 2 * config.n_points, 4 * config.n_points)
    ]
    return (e[0] - e[1]) / (e[1] - e[2])


@dataclass(frozen=True)
class VerificationReport:
    predicted: float
    oracle: float
    abs_diff: float
    index: int
    richardson_error: float


def verify_radial(j: int, m: int, n_r: int, omega_ha: float, config: OracleConfig = OracleConfig()) -> VerificationReport:
    """Compare (j + |m| + 1) omega with oracle level number ``n_r``."""
    if config.n_states <= n_r:
        config = OracleConfig(config.r_max, config.n_points, config.coulomb_strength, min(10, n_r + 1))
    spec = solve_radial(m, omega_ha, config)
    predicted = (j + abs(m) + 1) * omega_ha
    found = spec.eigenvalues[n_r]
    return VerificationReport(predicted, found, abs(found - predicted), n_r, spec.richardson_error[n_r])


def verify_qes(sol, config: OracleConfig = OracleConfig()) -> VerificationReport:
    """Check a QesSolution against the oracle at its own frequency."""
    return verify_radial(sol.j, sol.m, sol.n_r, sol.omega_ha, config)
