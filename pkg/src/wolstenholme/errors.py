"""Exception hierarchy shared by every layer of the package."""


class WolstenholmeError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(WolstenholmeError, ValueError):
    pass


class ExponentOutOfRange(WolstenholmeError, ValueError):
    pass


class ModulusOverflow(WolstenholmeError, OverflowError):
    pass


class NotAUnit(WolstenholmeError, ZeroDivisionError):
    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class RangeTooLarge(WolstenholmeError, ValueError):
    pass


class PrimeTooSmall(WolstenholmeError, ValueError):
    pass


class IndexNotSupported(WolstenholmeError, ValueError):
    pass


class DivisibilityViolation(WolstenholmeError, ArithmeticError):
    """A power sum that must be divisible by p was not.

    This only fires on a bug or on an index outside the range where the
    power-sum formula yields a p-integral Bernoulli residue.
    """
