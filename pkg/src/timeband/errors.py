"""Exception types shared across the package."""


class TimebandError(Exception):
    """Base class for all package-specific errors."""


class DivisionByZero(TimebandError, ZeroDivisionError):
    """Division of a rational function by zero."""


class LogTermRequired(TimebandError):
    """A rational antiderivative does not exist (logarithmic part is nonzero)."""


class NonDecaying(TimebandError):
    """Integrand does not vanish at +infinity, so the normalized antiderivative
    is undefined."""


class NotZeroEigenfunction(TimebandError):
    """The supplied log-derivative does not solve the Riccati equation
    w' + w^2 = V, i.e. the underlying function is not a zero-mode."""


class PoleError(TimebandError):
    """Numeric evaluation hit a pole of a rational coefficient."""


class NearDiagonal(TimebandError):
    """z1^2 - z2^2 is too small for the off-diagonal kernel formula."""


class NonConvergent(TimebandError):
    """Adaptive quadrature failed to converge within the panel budget."""


class BoundaryUndetermined(TimebandError):
    """The x->0 boundary contribution of a kernel could not be certified."""


class NoSolution(TimebandError):
    """An exact linear system is inconsistent."""


class UnderDetermined(TimebandError):
    """An exact linear system has a nullspace beyond the expected one."""

    def __init__(self, message, free_unknowns=()):
        super().__init__(message)
        self.free_unknowns = tuple(free_unknowns)


class IdentityFails(TimebandError):
    """A claimed operator identity does not hold exactly."""


class SingularBasis(TimebandError):
    """Galerkin trial space is not preserved by the operator (the z=0
    singular terms fail to cancel)."""


class OnlyTrivialSolution(TimebandError):
    """No commuting tridiagonal matrix beyond multiples of the identity."""


class DomainError(TimebandError, ValueError):
    """Argument outside the mathematical domain of an operation."""
