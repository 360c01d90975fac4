"""
Exceptions
==========
Error types raised by the dilute A_L spectrum toolkit.
"""

from typing import Optional


class DiluteSpectraError(Exception):
    """Base class for all toolkit errors."""


class DomainError(DiluteSpectraError, ValueError):
    """An input lies outside the domain of the operation."""


class TruncationError(DiluteSpectraError):
    """The product truncation cap was reached in strict mode."""


class TruncationAccuracyWarning(UserWarning):
    """The product truncation cap was reached; the returned value is degraded."""


class PoleError(DiluteSpectraError, ZeroDivisionError):
    """A denominator factor vanishes at the evaluation point."""

    def __init__(self, message: str, factor: Optional[str] = None):
        super().__init__(message)
        self.factor = factor


class ConsistencyError(DiluteSpectraError):
    """A quantity that must be real (or finite) is not, beyond tolerance."""


class SingularityError(DiluteSpectraError):
    """Two Bethe roots produce a vanishing elliptic factor."""

    def __init__(self, message: str, pair: Optional[tuple] = None):
        super().__init__(message)
        self.pair = pair


class AnsatzError(DiluteSpectraError):
    """The limit constraints of a string ansatz cannot be satisfied."""


class ContinuationError(DiluteSpectraError):
    """Newton continuation failed before reaching the target nome."""

    def __init__(self, message: str, last_good_x: Optional[float] = None):
        super().__init__(message)
        self.last_good_x = last_good_x


class StructureError(DiluteSpectraError):
    """A string root left its level or its phase drifted off the ansatz."""


class ConfigError(DiluteSpectraError, ValueError):
    """Invalid command-line run configuration."""
