"""Exception hierarchy. Every error may carry the failing check that triggered it."""


class WQGError(Exception):
    """Base class; ``check`` is the report entry that failed, if any."""

    def __init__(self, message, check=None):
        super().__init__(message)
        self.check = check


class NotPositiveDefinite(WQGError):
    pass


class IdempotentViolation(WQGError):
    pass


class LegNotSubalgebra(WQGError):
    pass


class AntipodeUnsolvable(WQGError):
    pass


class DistinguishedFunctionalNotPositive(WQGError):
    pass


class CounitUnsolvable(WQGError):
    pass


class NoIntegral(WQGError):
    pass


class NoFaithfulPositiveIntegral(WQGError):
    pass


class SpanDeficient(WQGError):
    pass


class AntipodeInconsistent(WQGError):
    pass


class NotFaithful(WQGError):
    pass


class BridgeNotUnitary(WQGError):
    pass


class PartialIsometryViolation(WQGError):
    pass


class DeltaNotPositive(WQGError):
    pass


class AlgebraMismatch(WQGError):
    pass


class InvalidGroupTable(WQGError):
    pass


class InvalidGroupoid(WQGError):
    pass


class SchemaError(WQGError):
    """Malformed input document; ``path`` locates the offending field."""

    def __init__(self, message, path="$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class NonFiniteNumber(SchemaError):
    pass
