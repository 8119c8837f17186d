"""Exception types shared across the package."""


class ScabError(Exception):
    pass


class DimensionError(ScabError, ValueError):
    """Operands live over different variable or generator sets."""


class DomainError(ScabError, ValueError):
    """Input outside the mathematical domain of an operation."""


class SkewSymmetrizabilityError(ScabError, ValueError):
    """Matrix admits no positive integer symmetrizer."""


class ExcludedSurfaceError(ScabError, ValueError):
    """Surface is one of the excluded low-complexity cases."""


class UnknownArcError(ScabError, KeyError):
    """Arc id or position not present in the triangulation."""


class TransportError(ScabError, ValueError):
    """A path does not connect the given triangulations."""


class LaurentDivisionError(ScabError, ArithmeticError):
    """Exact Laurent division failed; would falsify Laurentness upstream."""


class FiniteTypeError(ScabError, RuntimeError):
    """Flip closure did not terminate within the requested bound."""
