"""Scene and motion configuration of the synthetic driving setup."""
import math
from typing import Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ackermann_rs.models import (
    AckermannModel,
    CameraModel,
    DepthModel,
    RsModel,
    physical_from_rates,
    rates_from_physical,
)
from ackermann_rs.models.motion import KMH_TO_MS


class SceneConfig(BaseModel):
    """Two vertical walls plus a ground plane seen by a forward camera.

    Walls are parallel to each other; ``camera_yaw_deg`` turns them
    against the optical axis, moving the line at infinity off the centre.
    """

    width: int = Field(640, gt=0, description="Image width in pixels")
    height: int = Field(380, gt=0, description="Image height in pixels")
    focal_px: float = Field(816.0, gt=0, description="Focal length in pixels")
    frame_rate: float = Field(30.0, gt=0, description="Frames per second")
    readout_fraction: float = Field(0.4, description="Share of the frame time spent reading rows")
    camera_height_m: float = Field(1.2, gt=0, description="Camera height above the ground")
    left_plane_dist_m: float = Field(2.5, gt=0, description="Distance to the left wall")
    right_plane_dist_m: float = Field(4.0, gt=0, description="Distance to the right wall")
    camera_yaw_deg: float = Field(0.0, ge=-30.0, le=30.0, description="Yaw of the walls against the optical axis")
    n_lines_per_plane: int = Field(20, ge=0, description="Vertical lines generated per wall")
    line_length_range_m: Tuple[float, float] = Field((0.8, 2.5), description="Physical line length range")
    max_depth_m: float = Field(30.0, gt=0, description="Farthest line along a wall")
    margin_px: float = Field(12.0, ge=0, description="Border kept free of generated lines")
    outlier_fraction: float = Field(0.0, ge=0, le=1, description="Probability of a line being tilted")
    outlier_tilt_deg: Tuple[float, float] = Field((3.0, 15.0), description="Tilt range of outliers")
    pixel_noise_std: float = Field(0.0, ge=0, description="Endpoint noise in pixels")
    min_segment_len_px: float = Field(35.0, ge=0, description="Shorter rendered segments are dropped")
    model_order: Literal["exact", "second_order"] = Field(
        "exact", description="Pose used to distort endpoints"
    )
    depth_convention: Literal["rs_column", "physical"] = Field(
        "rs_column",
        description="Exact-pose depth: wall model at the RS column, or the true 3D point",
    )

    @field_validator("readout_fraction")
    @classmethod
    def validate_readout(cls, v: float) -> float:
        if not 0.0 < v <= 1.0:
            raise ValueError(f"readout_fraction must lie in (0, 1], got {v}")
        return v

    @model_validator(mode="after")
    def validate_ranges(self) -> "SceneConfig":
        lo, hi = self.line_length_range_m
        if not 0 < lo <= hi:
            raise ValueError("line_length_range_m must be positive and ordered")
        lo, hi = self.outlier_tilt_deg
        if not 0 <= lo <= hi:
            raise ValueError("outlier_tilt_deg must be ordered")
        return self

    @property
    def row_delay(self) -> float:
        """Seconds per row."""
        return self.readout_fraction / (self.frame_rate * self.height)

    @property
    def yaw(self) -> float:
        return math.radians(self.camera_yaw_deg)

    @property
    def gauge_length_m(self) -> float:
        """Metres per gauge unit: left-wall distance along the optical axis normal."""
        return self.left_plane_dist_m / math.cos(self.yaw)

    def camera(self) -> CameraModel:
        return CameraModel.from_readout(
            self.width, self.height, self.focal_px, self.frame_rate, self.readout_fraction
        )

    def depth_model(self) -> DepthModel:
        return DepthModel(
            delta=math.tan(self.yaw),
            lambda_right=self.left_plane_dist_m / self.right_plane_dist_m,
            lambda_ground=self.gauge_length_m / self.camera_height_m,
        )

    def lateral_axis(self) -> Tuple[float, float, float]:
        """Unit wall normal pointing from the left wall to the right wall."""
        return (math.cos(self.yaw), 0.0, -math.sin(self.yaw))

    def forward_axis(self) -> Tuple[float, float, float]:
        """Unit direction along the walls."""
        return (math.sin(self.yaw), 0.0, math.cos(self.yaw))

    model_config = ConfigDict(frozen=True)


class MotionTruth(BaseModel):
    """Vehicle motion in physical units."""

    angular_velocity: float = Field(0.0, description="Yaw rate in deg/s")
    translational_velocity: float = Field(0.0, description="Speed in km/h")

    @property
    def omega(self) -> float:
        """Yaw rate in rad/s."""
        return math.radians(self.angular_velocity)

    @property
    def speed(self) -> float:
        """Speed in m/s."""
        return self.translational_velocity * KMH_TO_MS

    def to_rates(self, cfg: SceneConfig) -> AckermannModel:
        """Per-row (alpha, beta) in the gauge of ``cfg``."""
        alpha, beta = rates_from_physical(
            self.angular_velocity, self.translational_velocity, cfg.row_delay, cfg.gauge_length_m
        )
        return AckermannModel(alpha_row=alpha, beta_row=beta)

    @classmethod
    def from_rates(cls, motion: AckermannModel, cfg: SceneConfig) -> "MotionTruth":
        angular, speed = physical_from_rates(
            motion.alpha_row, motion.beta_row, cfg.row_delay, cfg.gauge_length_m
        )
        return cls(angular_velocity=angular, translational_velocity=speed)

    def true_model(self, cfg: SceneConfig) -> RsModel:
        """Second-order model equivalent to this motion in scene ``cfg``."""
        return RsModel(motion=self.to_rates(cfg), depth=cfg.depth_model())

    model_config = ConfigDict(frozen=True)
