"""Exception hierarchy for sgmcal."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested quantity."""


class CalibrationError(Exception):
    """Base class for failures while inverting the privacy curve."""


class NoSolution(CalibrationError):
    """The target delta is unreachable for any positive noise scale."""


class BracketFailure(CalibrationError):
    """Geometric expansion did not produce a bracket around the root."""


class InvalidTolerance(CalibrationError, ValueError):
    """The requested relative tolerance is outside (0, 1e-2)."""


class ToleranceNotMet(CalibrationError):
    """Bisection reached adjacent floats without meeting the residual bound."""
