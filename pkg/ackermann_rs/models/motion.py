"""Ackermann motion and planar depth parameters."""
import math
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

KMH_TO_MS = 1000.0 / 3600.0


def _finite(v: float) -> float:
    if not math.isfinite(v):
        raise ValueError(f"Value must be finite, got {v}")
    return v


class AckermannModel(BaseModel):
    """Per-row angular and translational rates.

    The second-order pose at row ``t`` rotates by ``2 * alpha_row * t`` and
    translates by ``beta_row * t`` gauge lengths.
    """

    alpha_row: float = Field(0.0, description="Angular rate, radians per row (half the yaw rate)")
    beta_row: float = Field(0.0, description="Translational rate, gauge lengths per row")

    @field_validator("alpha_row", "beta_row")
    @classmethod
    def validate_finite(cls, v: float) -> float:
        """Rates must be finite."""
        return _finite(v)

    model_config = ConfigDict(frozen=True)


class DepthModel(BaseModel):
    """Piecewise-linear inverse depth of the two-wall-plus-ground scene.

    The left wall has unit slope. ``delta`` and ``lambda_right`` are
    ``None`` when the motion does not make them observable.
    """

    delta: Optional[float] = Field(None, description="Normalized column of the line at infinity")
    lambda_right: Optional[float] = Field(None, description="Right-wall inverse-depth slope")
    lambda_ground: float = Field(0.0, ge=0, description="Inverse camera height, gauge units")

    @field_validator("delta", "lambda_right")
    @classmethod
    def validate_finite(cls, v: Optional[float]) -> Optional[float]:
        """Observable values must be finite."""
        return None if v is None else _finite(v)

    @property
    def observable(self) -> bool:
        return self.delta is not None and self.lambda_right is not None

    model_config = ConfigDict(frozen=True)


class RsModel(BaseModel):
    """Full rolling-shutter model: motion plus scene depth."""

    motion: AckermannModel = Field(default_factory=AckermannModel)
    depth: DepthModel = Field(default_factory=DepthModel)

    @classmethod
    def from_parameters(
        cls,
        alpha: float,
        beta: float,
        delta: Optional[float] = None,
        lam: Optional[float] = None,
        lambda_ground: float = 0.0,
    ) -> "RsModel":
        """Shorthand constructor from the flat parameter tuple."""
        return cls(
            motion=AckermannModel(alpha_row=alpha, beta_row=beta),
            depth=DepthModel(delta=delta, lambda_right=lam, lambda_ground=lambda_ground),
        )

    @property
    def alpha(self) -> float:
        return self.motion.alpha_row

    @property
    def beta(self) -> float:
        return self.motion.beta_row

    @property
    def delta(self) -> float:
        """Line-at-infinity column; 0 when unobservable."""
        return 0.0 if self.depth.delta is None else self.depth.delta

    @property
    def lam(self) -> float:
        """Right-wall slope; 0 when unobservable."""
        return 0.0 if self.depth.lambda_right is None else self.depth.lambda_right

    @property
    def is_zero_motion(self) -> bool:
        return self.alpha == 0.0 and self.beta == 0.0

    def with_ground(self, lambda_ground: float) -> "RsModel":
        """Copy with the supplied ground inverse height."""
        depth = self.depth.model_copy(update={"lambda_ground": lambda_ground})
        return self.model_copy(update={"depth": depth})

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.alpha, self.beta, self.delta, self.lam)

    model_config = ConfigDict(frozen=True)


def rates_from_physical(
    angular_deg_s: float,
    speed_kmh: float,
    row_delay: float,
    gauge_length_m: float,
) -> Tuple[float, float]:
    """Convert deg/s and km/h into per-row (alpha, beta).

    Args:
        angular_deg_s: Yaw rate in degrees per second
        speed_kmh: Forward speed in km/h
        row_delay: Seconds per row
        gauge_length_m: Metres represented by one gauge unit

    Returns:
        (alpha_row, beta_row)
    """
    if gauge_length_m <= 0:
        raise ValueError(f"gauge_length_m must be positive, got {gauge_length_m}")
    alpha = math.radians(angular_deg_s) * row_delay / 2.0
    beta = speed_kmh * KMH_TO_MS * row_delay / gauge_length_m
    return alpha, beta


def physical_from_rates(
    alpha_row: float,
    beta_row: float,
    row_delay: float,
    gauge_length_m: float,
) -> Tuple[float, float]:
    """Inverse of :func:`rates_from_physical`, returns (deg/s, km/h)."""
    if row_delay <= 0:
        raise ValueError("row_delay must be positive for a physical conversion")
    angular = math.degrees(2.0 * alpha_row / row_delay)
    speed = beta_row * gauge_length_m / row_delay / KMH_TO_MS
    return angular, speed
