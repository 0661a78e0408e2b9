"""Exception hierarchy shared by every ffgrowth module."""


class FFGrowthError(Exception):
    """Base class for all library errors."""


class NotPrime(FFGrowthError, ValueError):
    pass


class NotIrreducible(FFGrowthError, ValueError):
    pass


class UniverseTooLarge(FFGrowthError, ValueError):
    pass


class DivisionByZero(FFGrowthError, ZeroDivisionError):
    pass


class FieldMismatch(FFGrowthError, ValueError):
    pass


class EmptySet(FFGrowthError, ValueError):
    pass


class DegenerateDenominator(FFGrowthError, ValueError):
    pass


class EmptyX(EmptySet):
    pass


class BadEpsilon(FFGrowthError, ValueError):
    pass


class BadModel(FFGrowthError, ValueError):
    pass


class NTooLarge(FFGrowthError, ValueError):
    pass


class HypothesisUnsatisfied(FFGrowthError, ValueError):
    """The starting set of a constrained search violates its hypothesis."""


class SetFileError(FFGrowthError, ValueError):
    pass


class InternalInvariantViolation(FFGrowthError, AssertionError):
    """A proven inequality failed on concrete input; always a bug."""
