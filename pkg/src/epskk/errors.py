"""Exception types shared across the package."""


class EpskkError(Exception):
    """Base class for all package-specific errors."""


class BranchPointSingularity(EpskkError):
    """Evaluation requested exactly at a branch point of the response."""


class DomainError(EpskkError):
    """Complex-frequency evaluation requested outside the closed upper half-plane."""


class SingularityMisdeclared(EpskkError):
    """An integrand misbehaves in a way its singularity descriptor does not cover."""


class ToleranceNotMet(EpskkError):
    """Adaptive refinement stalled far above the requested tolerance."""


class DecayTooSlow(EpskkError):
    """Tail integrand decays too slowly for the semi-infinite mapping."""


class SingularEvaluationPoint(EpskkError):
    """Dispersion-relation evaluation requested on the model's singular set."""


class RadiusTooLarge(EpskkError):
    """Semicircle radius too large for the small-radius contour expansion."""
