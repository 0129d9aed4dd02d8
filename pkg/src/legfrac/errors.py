"""Exception hierarchy for the legfrac package.

Every failure mode surfaced by the public API is a subclass of
:class:`LegfracError`, so callers can catch one base type.  The class names
mirror the failure they report; most carry the offending values in the
message rather than in structured attributes.
"""

from __future__ import annotations


class LegfracError(Exception):
    """Base class for all errors raised by legfrac."""


class PoleAtNonpositiveInteger(LegfracError):
    """Gamma evaluated at 0, -1, -2, ... (within tolerance)."""


class ParameterPole(LegfracError):
    """2F1 lower parameter is a blocking nonpositive integer."""


class NoConvergence(LegfracError):
    """No series/transformation route converges for these arguments."""


class PrefactorPole(LegfracError):
    """A gamma prefactor of the requested function value is singular."""


class DomainError(LegfracError):
    """Argument outside the valid domain (singular point, wrong region)."""


class TemplateMismatch(LegfracError):
    """Closed-form template constraint on (nu, mu) violated."""


class CoefficientVanishes(LegfracError):
    """A stepping coefficient is zero or infinite; the shift loses information."""


class DegenerateCombination(LegfracError):
    """Trigonometric denominator of a recombination formula vanishes."""


class ShiftedArgumentOnCut(LegfracError):
    """A group-shifted function argument landed on the cut [-1, 1]."""


class RadiusViolation(LegfracError):
    """Series parameter outside the printed convergence region."""


class CoefficientPole(LegfracError):
    """Gamma-ratio series coefficient is singular."""


class TailNotConverged(LegfracError):
    """Truncated ray-integral tail estimate exceeds the tolerance."""


class CollapseInvalid(LegfracError):
    """Collapsed-contour mode requested outside its validity region."""


class ConvergenceConditionViolated(LegfracError):
    """A printed convergence inequality fails for the requested parameters."""


class QuadratureFailure(LegfracError):
    """Contour quadrature could not reach the requested accuracy."""


class NoRiemannRepresentation(LegfracError):
    """The requested operator has no finite-loop (Riemann) realization."""


class DomainRejected(LegfracError):
    """Identity check parameters rejected by the entry's parameter domain."""


class UpstreamFailure(LegfracError):
    """An identity check failed inside an underlying evaluator."""

    def __init__(self, identity_id: str, cause: Exception):
        super().__init__(f"{identity_id}: {cause!r}")
        self.identity_id = identity_id
        self.cause = cause
