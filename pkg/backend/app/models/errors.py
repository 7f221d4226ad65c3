"""
Exception hierarchy shared by every service module
"""
from typing import Any, Dict, Optional


class AlgebraError(Exception):
    """Base error; `detail` carries the structured witness for reports"""

    def __init__(self, message: str, detail: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.detail = detail or {}

    @property
    def kind(self) -> str:
        return type(self).__name__


class EntryOutOfRange(AlgebraError):
    pass


class NotAssociative(AlgebraError):
    pass


class NotCryptogroup(AlgebraError):
    pass


class NotACongruence(AlgebraError):
    pass


class BadParams(AlgebraError):
    pass


class SubsetOutOfRange(AlgebraError):
    pass


class BadPartition(AlgebraError):
    pass


class NotBotg(AlgebraError):
    """Raised when a band of topological groups is required"""


class NotABaseAtIdempotent(AlgebraError):
    pass


class MissingIdempotentFamily(AlgebraError):
    pass


class AxiomsViolated(AlgebraError):
    pass


class TooLarge(AlgebraError):
    pass


class HypothesisViolated(AlgebraError):
    pass


class NotFullNormalSubcryptogroup(AlgebraError):
    pass


class PreconditionViolated(AlgebraError):
    pass


class ParseError(AlgebraError):
    pass


class ValidationError(AlgebraError):
    """Document-level wrapper around an error raised by a core module"""


class InvariantViolation(AlgebraError):
    """A cross-check between two routes, or a theorem conclusion, failed"""
