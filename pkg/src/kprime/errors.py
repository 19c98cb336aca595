"""Exception types raised by kprime.

Every error that carries a counterexample exposes it as ``witness``.
"""


class KPrimeError(Exception):
    """Base class for all kprime errors."""

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness


class NonAssociative(KPrimeError):
    pass


class BadUnit(KPrimeError):
    pass


class BadZero(KPrimeError):
    pass


class BadAction(KPrimeError):
    pass


class NotPc(KPrimeError):
    pass


class AmbientNotPc(KPrimeError):
    pass


class NotDenominatorSet(KPrimeError):
    pass


class NotAutomorphism(KPrimeError):
    pass


class NotMonoidMap(KPrimeError):
    pass


class NotEquivariant(KPrimeError):
    pass


class NotSubset(KPrimeError):
    pass


class NotMonic(KPrimeError):
    pass


class NotEpi(KPrimeError):
    pass


class NotClosed(KPrimeError):
    pass


class FlavorUnavailable(KPrimeError):
    pass


class NotFiniteLength(KPrimeError):
    pass


class NotAbelian(KPrimeError):
    pass


class ParseError(KPrimeError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
