"""Exception types shared across the package."""


class AnisoBoundsError(Exception):
    """Base class for every error raised by this package."""


class IntegerOverflow(AnisoBoundsError, ArithmeticError):
    pass


class NotInvertible(AnisoBoundsError, ValueError):
    pass


class CapExceeded(AnisoBoundsError):
    """A closure grew past its size cap (infinite or too-large group)."""


class InfiniteOrderGenerator(AnisoBoundsError, ValueError):
    pass


class NotCyclic(AnisoBoundsError, ValueError):
    pass


class SearchSpaceTooLarge(AnisoBoundsError):
    pass


class IsotropicAxis(AnisoBoundsError, ValueError):
    pass


class CharTwo(AnisoBoundsError, ValueError):
    pass


class Degenerate(AnisoBoundsError, ValueError):
    pass


class OddDimension(AnisoBoundsError, ValueError):
    pass


class NotScalarPower(AnisoBoundsError, ValueError):
    pass


class GroupTooLarge(AnisoBoundsError):
    pass


class DivisorNotPrincipal(AnisoBoundsError, ValueError):
    pass


class Obstruction(AnisoBoundsError):
    """No admissible differential form exists for the requested point set."""

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class OutOfLedger(AnisoBoundsError, LookupError):
    """The query lies outside every rule of the bounds ledger."""
