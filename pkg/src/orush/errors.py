"""Exception hierarchy shared by every module of the workbench."""


class OrushError(Exception):
    """Base class for all errors raised by ``orush``."""


class RingMismatchError(OrushError, TypeError):
    """Operands live over different coefficient rings."""


class NonUnitError(OrushError, ZeroDivisionError):
    """An inversion was requested for an element that is not a unit."""


class PrecisionError(OrushError, IndexError):
    """A truncated series coefficient at or beyond its precision was read."""


class LiftingObstructionError(OrushError, ArithmeticError):
    """Hensel lifting was asked to lift a root that is not simple."""


class UnsupportedOrderError(OrushError, ValueError):
    """The quadratic order is not maximal, so prime factorization is refused."""


class BudgetExceededError(OrushError):
    """A trial-division or search budget ran out."""


class PreconditionError(OrushError, ValueError):
    """An operation was called outside its documented domain."""


class ExponentNotFoundError(OrushError):
    """No Dedekind-Mertens exponent exists up to the search cap."""


class InconclusiveError(OrushError):
    """The input cannot be decided at the available precision."""
