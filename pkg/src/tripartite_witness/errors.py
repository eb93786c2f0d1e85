"""Exception types raised across the package."""


class WitnessError(Exception):
    """Base class for all package errors."""


class InvalidDimension(WitnessError, ValueError):
    pass


class UnsupportedDimension(WitnessError, ValueError):
    pass


class NotHermitian(WitnessError, ValueError):
    pass


class NotUnitary(WitnessError, ValueError):
    pass


class InvalidSpectrum(WitnessError, ValueError):
    pass


class ParameterOutOfRange(WitnessError, ValueError):
    pass


class PreconditionViolated(WitnessError, ValueError):
    """Coefficient constraints of a criterion are not met."""


class DegenerateCoefficients(WitnessError, ValueError):
    pass


class NoCrossing(WitnessError, RuntimeError):
    """The criterion never changes its verdict on the scanned interval."""


class ConvergenceError(WitnessError, RuntimeError):
    pass


class ToleranceExceeded(WitnessError, RuntimeError):
    pass


class FormatError(WitnessError, ValueError):
    """Malformed plain-text matrix input."""
