"""
Error hierarchy for the monopole toolkit.

Value problems (bad parameters, points outside the chart, wrong gauge)
subclass ValueError; integrator failures subclass RuntimeError.
"""


class MonopoleError(Exception):
    """Base class for every error raised by the package."""


class ParameterError(MonopoleError, ValueError):
    """Model parameters violate a structural invariant."""


class DegenerateMetricError(ParameterError):
    """alpha1 = beta1 = 0, or alpha1 + beta1*r <= 0 somewhere on the window."""


class ZeroMonopoleError(ParameterError):
    """Monopole strength k vanishes."""


class ZeroMError(ParameterError):
    """Metric deformation m vanishes."""


class OutOfDomainError(MonopoleError, ValueError):
    """A coordinate lies outside the validated domain window."""


class WrongGaugeError(MonopoleError, ValueError):
    """The gauge constant ell does not match what a formula was derived in."""


class NonpositiveSError(MonopoleError, ValueError):
    """S = E1 + k^2 m^2 <= 0, so sqrt(S) leaves the real domain."""


class ComplexDomainError(MonopoleError, ValueError):
    """A radicand or an inverse-trigonometric argument leaves the real domain."""


class NotCoprimeError(MonopoleError, ValueError):
    """Numerator and denominator of m share a common factor."""


class PeriodConventionError(MonopoleError, ValueError):
    """nu differs from 1/(m*delta) while the Taub-NUT chart requires it."""


class IntegrationError(MonopoleError, RuntimeError):
    """Base class for time-stepping failures."""


class NewtonDivergedError(IntegrationError):
    """The implicit midpoint Newton solve did not converge."""


class StepUnderflowError(IntegrationError):
    """The adaptive controller pushed dt below its floor."""


class DomainExitError(IntegrationError):
    """The orbit left the validated window during a step."""

    def __init__(self, message: str, state=None):
        super().__init__(message)
        self.state = state


class ConfigError(MonopoleError):
    """Experiment configuration could not be read or validated."""
