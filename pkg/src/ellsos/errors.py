"""Exception hierarchy."""


class EllSOSError(Exception):
    """Base class for all library errors."""


class NonConvergence(EllSOSError, ArithmeticError):
    pass


class ThetaOverflow(EllSOSError, OverflowError):
    pass


class DivisionByZeroTheta(EllSOSError, ZeroDivisionError):
    """A theta factor in a denominator vanishes at the working tolerance."""

    def __init__(self, factor: str, value: complex | None = None):
        self.factor = factor
        self.value = value
        msg = f"theta factor {factor} vanishes"
        if value is not None:
            msg += f" (value {value:.3e})"
        super().__init__(msg)


class DegenerateSpectralPoint(EllSOSError, ValueError):
    """An auxiliary spectral point coincides with a lattice spectral parameter."""


class EnumerationTooLarge(EllSOSError, ValueError):
    pass


class SingularMatrix(EllSOSError, ArithmeticError):
    pass
