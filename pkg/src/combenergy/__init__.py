"""Weighted combined-distortion energy between round annuli.

Feasibility bounds, extremal radial stretch profiles, closed-form and
quadrature energies, independent ODE verification, and a discrete
variational oracle for the energy

    E[h] = -integral- (a^2 |h_N|^2 + b^2 |h_T|^2) / |h|^(2 lambda)

over homeomorphisms h between the annuli A(1, r) and A(1, R).
"""

from . import _kernels, alpha, cli, energy, extremal, nitsche, ode, oracle
from .core import (
    BRANCH_GENERIC,
    BRANCH_LOG,
    AnnulusPair,
    EnergyParams,
    ExtremalSolution,
    PolarField,
    RadialProfile,
    alpha_lower_bound,
    validate,
)
from .errors import (
    CombEnergyError,
    DegenerateAnnulus,
    DegenerateDenominator,
    Infeasible,
    LambdaOne,
    MissingDerivatives,
    MonotonicityLost,
    MonotonicityViolation,
    NoConvergence,
    NonPositiveJacobian,
    NonPositiveWeight,
    OutOfDomain,
    OutOfRange,
    QuadratureFailure,
    RadicandNegative,
    StepFailure,
    ValidationError,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # subpackages / modules
    "alpha",
    "cli",
    "energy",
    "extremal",
    "nitsche",
    "ode",
    "oracle",
    "_kernels",
    # core types
    "AnnulusPair",
    "EnergyParams",
    "RadialProfile",
    "ExtremalSolution",
    "PolarField",
    "BRANCH_GENERIC",
    "BRANCH_LOG",
    "validate",
    "alpha_lower_bound",
    # errors
    "CombEnergyError",
    "ValidationError",
    "DegenerateAnnulus",
    "NonPositiveWeight",
    "OutOfDomain",
    "OutOfRange",
    "LambdaOne",
    "Infeasible",
    "NoConvergence",
    "DegenerateDenominator",
    "QuadratureFailure",
    "MissingDerivatives",
    "NonPositiveJacobian",
    "RadicandNegative",
    "StepFailure",
    "MonotonicityViolation",
    "MonotonicityLost",
]
