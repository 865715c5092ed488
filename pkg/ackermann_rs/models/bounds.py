"""Physical plausibility box for estimated models."""
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .camera import CameraModel
from .motion import RsModel, rates_from_physical

DEFAULT_MAX_ANGULAR_DEG_S = 90.0
DEFAULT_MAX_SPEED_KMH = 200.0
DEFAULT_GAUGE_LENGTH_M = 2.5


class PlausibilityBounds(BaseModel):
    """Closed box on (|alpha|, |beta|, delta) in per-row gauge units."""

    alpha_max: float = Field(..., ge=0, description="Max |alpha_row|")
    beta_max: float = Field(..., ge=0, description="Max |beta_row|")
    delta_min: float = Field(..., description="Smallest admissible delta (normalized)")
    delta_max: float = Field(..., description="Largest admissible delta (normalized)")

    @model_validator(mode="after")
    def validate_delta_range(self) -> "PlausibilityBounds":
        if self.delta_min > self.delta_max:
            raise ValueError("delta_min must not exceed delta_max")
        return self

    @classmethod
    def from_physical(
        cls,
        camera: CameraModel,
        gauge_length_m: float = DEFAULT_GAUGE_LENGTH_M,
        max_angular_deg_s: float = DEFAULT_MAX_ANGULAR_DEG_S,
        max_speed_kmh: float = DEFAULT_MAX_SPEED_KMH,
        delta_margin: float = 0.5,
    ) -> "PlausibilityBounds":
        """Convert physical limits to per-row bounds for ``camera``.

        Args:
            camera: Camera providing row delay and image width
            gauge_length_m: Distance to the left wall in metres
            max_angular_deg_s: Largest plausible yaw rate
            max_speed_kmh: Largest plausible speed
            delta_margin: Normalized margin around the image columns for delta

        Returns:
            Bounds usable by :func:`plausibility_filter`
        """
        alpha_max, beta_max = rates_from_physical(
            max_angular_deg_s, max_speed_kmh, camera.row_delay, gauge_length_m
        )
        left, right = camera.column_range()
        return cls(
            alpha_max=alpha_max,
            beta_max=beta_max,
            delta_min=left - delta_margin,
            delta_max=right + delta_margin,
        )

    model_config = ConfigDict(frozen=True)


def plausibility_filter(model: RsModel, bounds: PlausibilityBounds) -> bool:
    """True iff ``model`` lies inside the closed plausibility box.

    Unobservable depth values (``None``) are not constrained.
    """
    if abs(model.alpha) > bounds.alpha_max or abs(model.beta) > bounds.beta_max:
        return False
    lam = model.depth.lambda_right
    if lam is not None and lam < 0:
        return False
    delta = model.depth.delta
    if delta is not None and not (bounds.delta_min <= delta <= bounds.delta_max):
        return False
    return True
