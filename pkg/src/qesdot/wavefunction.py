"""Closed-form radial eigenfunctions at quasi-exactly-solvable points.

In effective atomic units the relative radial function is

    u(r) = r^(|m| + 1/2) exp(-omega r^2 / 2) p(r),   p(r) = sum_k c_k r^k,

and substituting it into

    -u''/2 + [(m^2 - 1/4) / (2 r^2) + omega^2 r^2 / 2 + 1/(2r)] u = eps u

with eps = (j + |m| + 1) omega gives the two-term coefficient recurrence

    (k+1)(k+2|m|+1) c_{k+1} = c_k - 2 omega (j+1-k) c_{k-1}.

The series terminates at degree j exactly when omega is one of the QES
frequencies 1/(2 eta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .polynomial import IntegerPolynomial, count_real_roots


class NotQesFrequency(ValueError):
    """The coefficient recurrence does not terminate at the requested degree."""


TERMINATION_TOL = 1e-10


def _recurrence(j: int, m: int, omega: float, n_terms: int) -> list[float]:
    m = abs(m)
    c = [1.0]
    prev = 0.0
    for k in range(n_terms - 1):
        nxt = (c[k] - 2.0 * omega * (j + 1 - k) * prev) / ((k + 1) * (k + 2 * m + 1))
        prev = c[k]
        c.append(nxt)
    return c


def termination_residual(j: int, m: int, omega_ha: float) -> float:
    """|c_{j+1}| relative to the largest of c_0..c_j."""
    c = _recurrence(j, m, omega_ha, j + 2)
    return abs(c[j + 1]) / max(abs(x) for x in c[: j + 1])


def coefficients(j: int, m: int, omega_ha: float, tol: float = TERMINATION_TOL) -> list[float]:
    """Polynomial coefficients c_0..c_j (c_0 = 1) of the QES solution.

    Raises NotQesFrequency when c_{j+1} fails to vanish, i.e. when
    ``omega_ha`` is not a QES frequency of (j, |m|).
    """
    if j < 0 or int(j) != j:
        raise ValueError(f"j must be a nonnegative integer, got {j!r}")
    if not omega_ha > 0:
        raise ValueError(f"omega must be positive, got {omega_ha}")
    c = _recurrence(j, m, omega_ha, j + 2)
    resid = abs(c[j + 1]) / max(abs(x) for x in c[: j + 1])
    if resid > tol:
        raise NotQesFrequency(
            f"omega={omega_ha!r} does not terminate the series for j={j}, m={m} "
            f"(|c_{j + 1}|/max|c| = {resid:.3e})"
        )
    return c[: j + 1]


@dataclass(frozen=True)
class RadialWavefunction:
    j: int
    m: int
    omega_ha: float
    coeffs: tuple[float, ...]
    norm: float
    node_count: int

    @property
    def power(self) -> float:
        return abs(self.m) + 0.5


def _norm(coeffs, m: int, omega: float) -> float:
    # int_0^inf r^n exp(-omega r^2) dr = Gamma((n+1)/2) / (2 omega^((n+1)/2))
    base = 2 * abs(m) + 1
    total = 0.0
    for a, ca in enumerate(coeffs):
        for b, cb in enumerate(coeffs):
            half = (base + a + b + 1) / 2
            total += ca * cb * math.exp(math.lgamma(half) - half * math.log(omega)) / 2
    return math.sqrt(total)


def count_nodes(w: RadialWavefunction | list | tuple) -> int:
    """Zeros of the polynomial part on r > 0, counted with an exact Sturm chain.

    The prefactor r^(|m|+1/2) exp(-omega r^2/2) never vanishes for r > 0, so
    only p matters.  Float coefficients are converted to Fractions exactly.
    """
    coeffs = w.coeffs if isinstance(w, RadialWavefunction) else w
    p = IntegerPolynomial(tuple(Fraction(c) for c in coeffs))
    if p.degree < 1:
        return 0
    return count_real_roots(p, 0, None)


def radial_wavefunction(j: int, m: int, omega_ha: float) -> RadialWavefunction:
    c = coefficients(j, m, omega_ha)
    return RadialWavefunction(j, m, omega_ha, tuple(c), _norm(c, m, omega_ha), count_nodes(c))


def _derivatives(w: RadialWavefunction, r: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """u, u', u'' (unnormalized) by the product rule on r^s * g * p."""
    s, om = w.power, w.omega_ha
    c = np.asarray(w.coeffs)[::-1]
    p = np.polyval(c, r)
    dp = np.polyval(np.polyder(c), r) if len(c) > 1 else np.zeros_like(r)
    d2p = np.polyval(np.polyder(c, 2), r) if len(c) > 2 else np.zeros_like(r)
    f = r**s
    df = s * r ** (s - 1)
    d2f = s * (s - 1) * r ** (s - 2)
    g = np.exp(-0.5 * om * r * r)
    dg = -om * r * g
    d2g = (om * om * r * r - om) * g
    # (f g p)'' with all cross terms
    u = f * g * p
    du = df * g * p + f * dg * p + f * g * dp
    d2u = (
        d2f * g * p + f * d2g * p + f * g * d2p
        + 2 * (df * dg * p + df * g * dp + f * dg * dp)
    )
    return u, du, d2u


def evaluate(w: RadialWavefunction, r):
    """Normalized u(r); accepts scalars or arrays, r > 0."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise ValueError("r must be positive")
    u, _, _ = _derivatives(w, r_arr)
    u = u / w.norm
    return float(u) if u.ndim == 0 else u


def sample_grid(omega: float, n: int = 600) -> np.ndarray:
    scale = 1.0 / math.sqrt(omega)
    return np.logspace(math.log10(1e-3 * scale), math.log10(10.0 * scale), n)


def ode_residual(
    w: RadialWavefunction,
    e_r_ha: float,
    omega_c_ha: float = 0.0,
    coulomb_strength: float = 1.0,
) -> float:
    """Max |H u - eps u| / max |u| over a logarithmic grid.

    ``eps = e_r_ha - m * omega_c_ha / 2`` strips the Zeeman shift from the
    relative energy.  ``coulomb_strength`` scales the 1/(2r) term (0 gives
    the bare oscillator).
    """
    eps = e_r_ha - w.m * omega_c_ha / 2
    om, m = w.omega_ha, abs(w.m)
    r = sample_grid(om)
    u, _, d2u = _derivatives(w, r)
    potential = (m * m - 0.25) / (2 * r * r) + 0.5 * om * om * r * r + coulomb_strength / (2 * r)
    resid = -0.5 * d2u + (potential - eps) * u
    return float(np.max(np.abs(resid)) / np.max(np.abs(u)))
