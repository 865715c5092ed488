"""Exceptions raised by the rolling-shutter estimation library."""
from typing import Any, Dict, Optional


class AckermannRsError(Exception):
    """Base class for all library errors."""


class ParseError(AckermannRsError):
    """Input file or document could not be parsed."""


class InsufficientDataError(AckermannRsError):
    """Not enough line segments for the requested estimation."""


class EstimationFailedError(AckermannRsError):
    """RANSAC finished without a single plausible hypothesis."""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics: Dict[str, Any] = diagnostics or {}


class DegenerateSampleError(AckermannRsError):
    """Minimal sample does not determine the model (rank deficient)."""


class NoSolutionError(AckermannRsError):
    """A solver step has no real solution."""


class SideMismatchError(AckermannRsError):
    """Segment lies on the wrong side of the line at infinity."""


class SingularConfigurationError(AckermannRsError):
    """Compensation denominator vanishes for the given point and model."""


class MotionDomainError(AckermannRsError):
    """Motion parameters outside the domain of the second-order model."""
