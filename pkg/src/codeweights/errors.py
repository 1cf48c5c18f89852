"""Exception types shared across the package."""


class CodeWeightsError(Exception):
    """Base class for every error raised by codeweights."""


class NonPrime(CodeWeightsError, ValueError):
    pass


class DegreeTooLarge(CodeWeightsError, ValueError):
    pass


class ReducibleModulus(CodeWeightsError, ValueError):
    pass


class ZeroInverse(CodeWeightsError, ZeroDivisionError):
    pass


class FieldMismatch(CodeWeightsError, ValueError):
    pass


class ZeroArgument(CodeWeightsError, ValueError):
    pass


class FieldTooLarge(CodeWeightsError, ValueError):
    pass


class PrimeMismatch(CodeWeightsError, ValueError):
    pass


class OddExponentValue(CodeWeightsError, ArithmeticError):
    """An odd power of the quadratic Gauss sum has no integer value."""


class UnsupportedExponent(CodeWeightsError, ValueError):
    pass


class NonRationalSum(CodeWeightsError, ArithmeticError):
    """A sum that must be a rational integer came out irrational."""


class WorkBudgetExceeded(CodeWeightsError, RuntimeError):
    pass


class OutOfScope(CodeWeightsError, ValueError):
    pass


class BranchUnavailable(CodeWeightsError, ValueError):
    pass
