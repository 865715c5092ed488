"""Data models for rolling-shutter estimation."""
from .bounds import PlausibilityBounds, plausibility_filter
from .camera import CameraModel, NormalizedPoint, denormalize, normalize
from .manifest import RunManifest
from .motion import (
    AckermannModel,
    DepthModel,
    RsModel,
    physical_from_rates,
    rates_from_physical,
)
from .result import EstimateResult, RansacConfig, SideLabel, SolverVariant
from .segment import SegmentRs

__all__ = [
    "AckermannModel",
    "CameraModel",
    "DepthModel",
    "EstimateResult",
    "NormalizedPoint",
    "PlausibilityBounds",
    "RansacConfig",
    "RsModel",
    "RunManifest",
    "SegmentRs",
    "SideLabel",
    "SolverVariant",
    "denormalize",
    "normalize",
    "physical_from_rates",
    "plausibility_filter",
    "rates_from_physical",
]
