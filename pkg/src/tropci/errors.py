"""Exception hierarchy. Precondition failures and internal inconsistencies are
kept apart so the CLI can map them to distinct exit codes."""


class TropError(Exception):
    """Base class for all library errors."""


class ParseError(TropError, ValueError):
    pass


class PreconditionError(TropError, ValueError):
    """Input violates an operation's precondition."""


class EmptyPolynomial(PreconditionError):
    pass


class DegreeTooSmall(PreconditionError):
    pass


class NotAPlane(PreconditionError):
    pass


class WrongDimension(PreconditionError):
    pass


class DegenerateCell(PreconditionError):
    pass


class ZeroVector(PreconditionError):
    pass


class UnknownExponent(PreconditionError, KeyError):
    pass


class SegmentOnRay(PreconditionError):
    pass


class VertexOnAxis(PreconditionError):
    pass


class AmbiguousStaircase(PreconditionError):
    pass


class OriginOnCurve(PreconditionError):
    """The maximal coefficient is not unique, so the origin lies on V(g)."""


class Disconnected(PreconditionError):
    pass


class NotCertified(PreconditionError):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class InternalInconsistency(TropError, RuntimeError):
    pass


class GlueMismatch(InternalInconsistency):
    pass
