"""Exception hierarchy shared by all fnlab modules."""


class FNLabError(Exception):
    """Base class for every error raised by fnlab."""


class ValidationError(FNLabError, ValueError):
    """Malformed input: bad decomposition, bad coordinates, bad config."""


class DomainError(ValidationError):
    """Argument outside the domain of a geometric formula."""


class DegeneracyError(FNLabError, ArithmeticError):
    """A geometric construction collapsed numerically."""


class NonHyperbolicError(FNLabError, ArithmeticError):
    """Holonomy element is elliptic or parabolic, so it has no geodesic length."""


class UnsupportedError(FNLabError):
    """Configuration outside what the implementation handles."""


class NotPureTwistError(ValidationError):
    """Two points are not related by a twist along a single curve."""


class InapplicableError(ValidationError):
    """Quantity undefined for this surface (e.g. arc metric on a closed surface)."""
