"""Exception hierarchy shared by every homsec module."""


class HomsecError(Exception):
    """Base class for all library errors."""


class StructureError(HomsecError, ValueError):
    """An access structure (or a request against one) is malformed."""


class WrongCardinality(StructureError):
    pass


class OutOfRange(StructureError):
    pass


class Duplicate(StructureError):
    pass


class UncoveredParticipant(StructureError):
    def __init__(self, message, uncovered=()):
        super().__init__(message)
        self.uncovered = tuple(uncovered)


class EmptyBasis(StructureError):
    pass


class TooSmall(StructureError):
    pass


class InvalidSize(StructureError):
    pass


class IntransitivityDetected(HomsecError):
    """The pairwise participant-equivalence test is not transitive."""

    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class UnverifiedCertificate(HomsecError):
    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class IndependenceViolated(HomsecError):
    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class ConfigInvalid(HomsecError, ValueError):
    pass


class NotReducedThreshold(HomsecError):
    pass


class FieldTooSmall(HomsecError, ValueError):
    pass


class NotPrime(HomsecError, ValueError):
    pass


class SearchExhausted(HomsecError):
    def __init__(self, message, caps=None):
        super().__init__(message)
        self.caps = caps


class DimensionMismatch(HomsecError, ValueError):
    pass


class NotQualified(HomsecError):
    pass


class InconsistentShares(HomsecError):
    pass


class CapExceeded(HomsecError):
    pass


class FormatError(HomsecError):
    """Text input could not be parsed; ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
