"""Exception taxonomy for the annulus energy problem.

Every failure mode raised by this package derives from CombEnergyError, so
callers can catch one base class at an API boundary (the CLI maps subtrees
of this hierarchy onto exit codes).
"""

from __future__ import annotations


class CombEnergyError(Exception):
    """Base class for all combenergy errors."""


class ValidationError(CombEnergyError):
    """Rejected input: a domain object or run configuration is malformed."""


class DegenerateAnnulus(ValidationError):
    """An annulus outer radius is not strictly greater than 1."""


class NonPositiveWeight(ValidationError):
    """A stretch weight (a or b) is not strictly positive."""


class OutOfDomain(CombEnergyError):
    """An argument lies outside the admissible parameter region (e.g. alpha below its lower bound)."""


class LambdaOne(CombEnergyError):
    """Operation undefined at lambda = 1; use the logarithmic branch instead."""


class Infeasible(CombEnergyError):
    """The requested annulus pair violates the Nitsche-type feasibility bound."""

    def __init__(self, message: str, bound: float | None = None):
        super().__init__(message)
        self.bound = bound


class NoConvergence(CombEnergyError):
    """An iterative solve hit its iteration cap before meeting tolerance."""


class OutOfRange(CombEnergyError):
    """A point to evaluate lies outside the annulus / profile range."""


class DegenerateDenominator(CombEnergyError):
    """The closed-form profile denominator lost positivity (inadmissible alpha)."""


class QuadratureFailure(CombEnergyError):
    """Adaptive quadrature could not certify the requested accuracy."""


class MissingDerivatives(CombEnergyError):
    """A sampled field lacks the derivative samples required by the operation."""


class NonPositiveJacobian(CombEnergyError):
    """The Jacobian determinant is not strictly positive on the grid."""


class RadicandNegative(CombEnergyError):
    """A shooting trajectory left the admissible region (alpha below its lower bound)."""


class StepFailure(CombEnergyError):
    """The adaptive integrator's step size underflowed without meeting tolerance."""


class MonotonicityViolation(CombEnergyError):
    """A discrete radial profile is not strictly increasing."""


class MonotonicityLost(CombEnergyError):
    """The minimizer could not restore strict monotonicity by projection."""
