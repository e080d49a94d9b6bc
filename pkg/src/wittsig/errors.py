"""Exception hierarchy shared by all wittsig modules."""


class WittsigError(Exception):
    """Base class for all errors raised by wittsig."""


class ConductorMismatchError(WittsigError, ValueError):
    """Operands live in different cyclotomic fields.

    Lift both to a common conductor with ``lift`` (for instance the lcm of
    the two conductors) before combining them.
    """


class PoleError(WittsigError, ZeroDivisionError):
    """A rational function was evaluated at one of its poles."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class IndeterminateError(WittsigError, ArithmeticError):
    """Interval arithmetic could not separate a denominator from zero."""


class RefinementBudgetExceeded(WittsigError, RuntimeError):
    """Precision doubling ran out of budget before a certificate was found."""


class SingularFormError(WittsigError, ValueError):
    """A form that must be nonsingular has vanishing determinant."""


class HermitianViolation(WittsigError, ValueError):
    """A gram matrix fails the epsilon-hermitian symmetry condition."""

    def __init__(self, message, entry=None):
        super().__init__(message)
        self.entry = entry


class ConsistencyError(WittsigError, RuntimeError):
    """An internal cross-check between two computations failed."""


class UnsupportedPolynomialError(WittsigError, ValueError):
    """The polynomial is outside the family handled by the trace machinery."""
