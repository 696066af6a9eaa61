"""Exception hierarchy shared by every layer of the package."""


class TropError(Exception):
    """Base class for all errors raised by troploc."""


# -- algebra -----------------------------------------------------------------

class InversionOfZero(TropError, ZeroDivisionError):
    """The tropical zero (bottom) has no multiplicative inverse."""


class UndefinedPower(TropError, ValueError):
    """Bottom raised to a non-positive exponent."""


class ShapeMismatch(TropError, ValueError):
    """Operands do not conform."""


class ZeroVector(TropError, ValueError):
    """Operation requires a vector with at least one finite element."""


class NotRegular(TropError, ValueError):
    """Operation requires a vector without bottom elements."""


class StarDiverges(TropError, ArithmeticError):
    """Kleene star requested for a matrix with Tr(A) > 0."""


# -- solvers -----------------------------------------------------------------

class DegenerateInput(TropError, ValueError):
    """Inputs violate the non-degeneracy assumptions of a solver."""


class Infeasible(TropError):
    """The constraint set is empty.

    Attributes:
        term_index: position of the largest violating term in the
            feasibility condition.
        term: human readable label of that term.
        value: its value (strictly positive).
    """

    def __init__(self, message, term_index=None, term=None, value=None):
        super().__init__(message)
        self.term_index = term_index
        self.term = term
        self.value = value


class ConformanceError(TropError, ValueError):
    """Per-point lists differ in length."""


class BoundsError(TropError, ValueError):
    """A numeric input lies outside its admissible range."""


# -- oracle ------------------------------------------------------------------

class GridTooCoarse(TropError):
    """Too few feasible grid points to draw a conclusion."""


class EmptyFeasible(TropError):
    """No grid point satisfies the constraints."""


class OracleViolation(TropError, AssertionError):
    """A brute-force check found a point breaking a constraint."""


# -- documents ---------------------------------------------------------------

class ParseError(TropError, ValueError):
    """Malformed instance text."""


class ValidationError(TropError, ValueError):
    """Well-formed document whose content breaks an invariant."""

    def __init__(self, message, field=None):
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)
        self.field = field
