"""Exception types raised across the package."""


class FrobscopeError(Exception):
    """Base class for all package errors."""


class ModulusRangeError(FrobscopeError, ValueError):
    """Modulus outside the supported range [2, 2**62)."""


class EvenPrime(FrobscopeError, ValueError):
    pass


class NotInvertible(FrobscopeError, ArithmeticError):
    pass


class NonMonicDivisor(FrobscopeError, ValueError):
    pass


class CapExceeded(FrobscopeError, ValueError):
    """A configured work cap (step count, exponent, series order) was exceeded."""


class RamifiedPrime(FrobscopeError, ValueError):
    """The prime divides the discriminant of the characteristic polynomial."""


class DegenerateQuadratic(FrobscopeError, ValueError):
    pass


class WrongClass(FrobscopeError, ValueError):
    """A sequence does not have the characteristic polynomial the operation needs."""


class EvenCharacteristic(FrobscopeError, ValueError):
    pass


class InternalInconsistency(FrobscopeError, AssertionError):
    """A proven identity failed at runtime. Never expected; signals a bug."""


class PolyParseError(FrobscopeError, ValueError):
    pass
