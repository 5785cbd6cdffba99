"""Quasi-exactly-solvable spectra of two interacting electrons in a quantum dot.

Modules
-------
units         effective atomic units and laboratory conversions
algebra       sl(2) generators, the operator T, energy polynomials, eta roots
spectrum      QES magnetic fields and energies for a material
wavefunction  closed-form radial eigenfunctions and their ODE residual
oracle        finite-difference radial eigensolver used for verification
cli           command-line interface
"""

from .algebra import (
    EtaValue,
    GeneratorAction,
    critical_polynomial,
    eta_values,
    recurrence_polynomials,
    t_matrix,
)
from .oracle import ConvergenceFailure, OracleConfig, OracleSpectrum, solve_radial, verify_qes
from .polynomial import IntegerPolynomial
from .spectrum import (
    CmState,
    NoQesField,
    QesSolution,
    cm_energy,
    dot_size,
    qes_point,
    relative_energy,
    total_energy,
)
from .units import MaterialParams, Scales, cyclotron_to_tesla, derive_scales, material
from .wavefunction import (
    NotQesFrequency,
    RadialWavefunction,
    coefficients,
    count_nodes,
    evaluate,
    ode_residual,
    radial_wavefunction,
)

__version__ = "0.1.0"
