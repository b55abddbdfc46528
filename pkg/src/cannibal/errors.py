"""Exception hierarchy shared by all modules."""


class CannibalError(Exception):
    """Base class for every error raised by this package."""


class ContextMismatch(CannibalError):
    """Operands live in different ring contexts (precision or ring differ)."""


class NotAUnit(CannibalError, ZeroDivisionError):
    pass


class PrecisionExhausted(CannibalError):
    """Requested output precision cannot be certified from the inputs."""


class NonzeroConstantTerm(CannibalError):
    pass


class NotReversible(CannibalError):
    pass


class BadLeadingTerm(CannibalError):
    pass


class TwoNotInvertible(CannibalError):
    pass


class NotIsomorphic(CannibalError):
    pass


class AmbiguousSolution(CannibalError):
    pass


class NotGroupAutomorphism(CannibalError):
    pass


class NotNormalizable(CannibalError):
    pass


class NotOdd(CannibalError, ValueError):
    pass


class UnknownCheckId(CannibalError, KeyError):
    pass


class InvalidConfig(CannibalError, ValueError):
    pass
