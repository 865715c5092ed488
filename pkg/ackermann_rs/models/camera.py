"""Camera intrinsics and pixel <-> image-plane transforms."""
import math
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


Pixel = Tuple[float, float]


class NormalizedPoint(BaseModel):
    """Point on the image plane (pixel pre-multiplied by K^-1)."""

    x: float = Field(..., description="Normalized column coordinate")
    y: float = Field(..., description="Normalized row coordinate")

    @field_validator("x", "y")
    @classmethod
    def validate_finite(cls, v: float) -> float:
        """Reject NaN and infinities."""
        if not math.isfinite(v):
            raise ValueError(f"Normalized coordinate must be finite, got {v}")
        return v

    def homogeneous(self) -> np.ndarray:
        """Return [x, y, 1]."""
        return np.array([self.x, self.y, 1.0])

    model_config = ConfigDict(frozen=True)


class CameraModel(BaseModel):
    """Pinhole rolling-shutter camera with square pixels."""

    focal_px: float = Field(..., gt=0, description="Focal length in pixels")
    principal_point: Tuple[float, float] = Field(..., description="(cx, cy) in pixels")
    width: int = Field(..., gt=0, description="Image width in pixels")
    height: int = Field(..., gt=0, description="Image height in pixels")
    row_delay: float = Field(0.0, ge=0, description="Seconds between two successive rows (tau)")
    frame_rate: float = Field(30.0, gt=0, description="Frames per second (metadata only)")

    @model_validator(mode="after")
    def validate_principal_point(self) -> "CameraModel":
        """Principal point must lie inside the frame."""
        cx, cy = self.principal_point
        if not (0 <= cx < self.width and 0 <= cy < self.height):
            raise ValueError(
                f"Principal point ({cx}, {cy}) outside {self.width}x{self.height} frame"
            )
        return self

    @property
    def cx(self) -> float:
        return self.principal_point[0]

    @property
    def cy(self) -> float:
        return self.principal_point[1]

    @classmethod
    def uncalibrated(cls, width: int, height: int, row_delay: float = 0.0) -> "CameraModel":
        """Fallback intrinsics: f = 0.9 * max(width, height), centred principal point."""
        return cls(
            focal_px=0.9 * max(width, height),
            principal_point=(width / 2.0, height / 2.0),
            width=width,
            height=height,
            row_delay=row_delay,
        )

    @classmethod
    def from_readout(
        cls,
        width: int,
        height: int,
        focal_px: float,
        frame_rate: float,
        readout_fraction: float,
    ) -> "CameraModel":
        """Build a centred camera whose readout spans ``readout_fraction`` of a frame."""
        return cls(
            focal_px=focal_px,
            principal_point=(width / 2.0, height / 2.0),
            width=width,
            height=height,
            row_delay=readout_fraction / (frame_rate * height),
            frame_rate=frame_rate,
        )

    def normalize(self, pixel: Pixel) -> NormalizedPoint:
        """Map a pixel to image-plane coordinates."""
        px, py = pixel
        return NormalizedPoint(
            x=(px - self.cx) / self.focal_px,
            y=(py - self.cy) / self.focal_px,
        )

    def denormalize(self, point: NormalizedPoint) -> Pixel:
        """Map image-plane coordinates back to a pixel."""
        return (
            point.x * self.focal_px + self.cx,
            point.y * self.focal_px + self.cy,
        )

    def normalize_arrays(self, px: np.ndarray, py: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Vectorised :meth:`normalize`."""
        return (
            (np.asarray(px, dtype=float) - self.cx) / self.focal_px,
            (np.asarray(py, dtype=float) - self.cy) / self.focal_px,
        )

    def column_range(self) -> Tuple[float, float]:
        """Normalized x of the left and right image borders."""
        return (-self.cx / self.focal_px, (self.width - self.cx) / self.focal_px)

    def contains(self, pixel: Pixel) -> bool:
        """True when the pixel lies inside the frame."""
        px, py = pixel
        return 0 <= px <= self.width - 1 and 0 <= py <= self.height - 1

    model_config = ConfigDict(frozen=True)


def normalize(camera: CameraModel, pixel: Pixel) -> NormalizedPoint:
    """Pixel -> normalized point, x = (px - cx)/f, y = (py - cy)/f."""
    return camera.normalize(pixel)


def denormalize(camera: CameraModel, point: NormalizedPoint) -> Pixel:
    """Normalized point -> pixel (inverse of :func:`normalize`)."""
    return camera.denormalize(point)
