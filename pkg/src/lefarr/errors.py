"""Exception hierarchy; the CLI maps each family to an exit code."""


class LefarrError(Exception):
    exit_code = 3


class InputError(LefarrError, ValueError):
    """Malformed input: unparsable documents, invalid objects, bad bounds."""

    exit_code = 1


class DimensionMismatchError(InputError):
    pass


class InvalidArrangementError(InputError):
    pass


class InsufficientBoundError(InputError):
    pass


class UnsupportedInputError(InputError):
    pass


class HypothesisError(LefarrError):
    """A hypothesis of the requested check does not hold for the given input."""

    exit_code = 2


class InconsistencyError(LefarrError, ArithmeticError):
    """Two routes that must agree did not. Always a bug."""

    exit_code = 3


class BadPrimeError(LefarrError, ArithmeticError):
    """A denominator vanishes modulo the active prime."""

    exit_code = 3
