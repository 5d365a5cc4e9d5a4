"""Exception types shared across the package."""


class KostkaError(Exception):
    """Base class for all errors raised by this package."""


class NotAPartition(KostkaError, ValueError):
    pass


class NotAPermutation(KostkaError, ValueError):
    pass


class InvalidShape(KostkaError, ValueError):
    pass


class SizeMismatch(KostkaError, ValueError):
    pass


class EmptyPolytope(KostkaError, ValueError):
    pass


class DuplicateAbscissa(KostkaError, ValueError):
    pass


class NonIntegralHStar(KostkaError, ArithmeticError):
    pass


class ZeroPolynomial(KostkaError, ValueError):
    pass


class NotNaturallyLabeled(KostkaError, ValueError):
    pass


class ResourceLimit(KostkaError, RuntimeError):
    """A guard on problem size was tripped before starting the computation."""


class VerificationFailed(KostkaError):
    """An interpolated polynomial disagrees with a direct count.

    ``x`` is the offending abscissa, ``expected`` the direct count (already
    sign-adjusted on the negative side), ``actual`` the polynomial value.
    """

    def __init__(self, x, expected, actual, reason=""):
        self.x = x
        self.expected = expected
        self.actual = actual
        msg = f"verification failed at x={x}: count {expected}, polynomial {actual}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class Cancelled(KostkaError):
    """A long enumeration was stopped by its progress hook."""
