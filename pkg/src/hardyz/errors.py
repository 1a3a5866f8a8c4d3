"""Exception hierarchy shared by every module of the package."""


class HardyError(Exception):
    """Base class for all errors raised by hardyz."""


class PoleError(HardyError, ZeroDivisionError):
    """Evaluation point coincides with (or is numerically at) a pole."""


class DomainViolation(HardyError, ValueError):
    """Point lies outside the excluded-disk domain D or a config is invalid."""


class PoleProximity(HardyError, ValueError):
    """A Cauchy circle would come too close to the pole of zeta at s=1."""


class PrecisionExhausted(HardyError, ArithmeticError):
    """No admissible Euler-Maclaurin parameters meet the requested tolerance."""


class NearZeroDenominator(HardyError, ArithmeticError):
    pass


class RealityCheckFailed(HardyError, ArithmeticError):
    """The imaginary part of a Z-derivative exceeded its tolerance."""

    def __init__(self, message, value=None, imag=None):
        super().__init__(message)
        self.value = value
        self.imag = imag


class UnstableScan(HardyError, RuntimeError):
    """Refined sign-change scans kept disagreeing with the coarse scan."""


class BoundaryTooClose(HardyError, ValueError):
    pass


class WindingUnresolved(HardyError, RuntimeError):
    pass


class FitAmbiguous(HardyError, ArithmeticError):
    """Pole-order slope is too far from an integer to round safely."""

    def __init__(self, message, slope=None):
        super().__init__(message)
        self.slope = slope
