"""Exception types shared across the package."""


class IneqForgeError(Exception):
    """Base class for all package errors."""


class DomainError(IneqForgeError, ValueError):
    """A term was evaluated where its denominator vanishes or outside its domain."""


class UnsupportedMemberError(IneqForgeError, ValueError):
    pass


class ArityError(IneqForgeError, ValueError):
    pass


class DegreeOverflowError(IneqForgeError, OverflowError):
    """A polynomial exceeded the per-variable degree cap."""


class NotSymmetricError(IneqForgeError, ValueError):
    def __init__(self, message, permutation=None, point=None):
        super().__init__(message)
        self.permutation = permutation
        self.point = point


class DegeneratePolynomialError(IneqForgeError, ValueError):
    pass


class InfeasibleSpecError(IneqForgeError, ValueError):
    pass


class NonConvergenceError(IneqForgeError, RuntimeError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NoSignChangeError(IneqForgeError, ValueError):
    def __init__(self, message, samples=None):
        super().__init__(message)
        self.samples = samples or []


class RegimeError(IneqForgeError, ValueError):
    """Exponent outside the range where the requested power bound holds."""


class DegenerateTriangleError(IneqForgeError, ValueError):
    pass


class GridTooLargeError(IneqForgeError, ValueError):
    pass
