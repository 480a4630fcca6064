"""Exception hierarchy shared by every module of the package."""


class CournotError(Exception):
    """Base class for all errors raised by cournot_demand."""


class QuadratureFailure(CournotError, ArithmeticError):
    """Adaptive quadrature could not reach the requested tolerance."""


class NonPositiveScale(CournotError, ValueError):
    """A scale factor k <= 0 was supplied."""


class OutOfSupport(CournotError, ValueError):
    """The evaluation point lies outside [support_lo, support_hi)."""


class ZeroSurvival(CournotError, ArithmeticError):
    """The survival function underflowed to zero inside the support."""


class NonPositivePoint(CournotError, ValueError):
    """A function defined only for x > 0 was evaluated at x <= 0."""


class NotAvailable(CournotError):
    """The operation needs a density and the distribution does not expose one."""


class InconsistentVerdict(CournotError):
    """Raw monotonicity verdicts contradict a proven class implication.

    Usually a sign that the scan grid is too coarse.
    """


class AssumptionViolated(CournotError, ValueError):
    """The market breaks the standing assumption E[alpha] > c (or n < 1)."""


class EmptyRegion(CournotError, ValueError):
    """Expected price never exceeds marginal cost on the sampled range."""


class ConfigParse(CournotError, ValueError):
    """A configuration or distribution specification could not be parsed."""
