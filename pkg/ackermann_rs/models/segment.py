"""Line segment detected in a rolling-shutter frame."""
import math
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .camera import CameraModel, NormalizedPoint, Pixel


class SegmentRs(BaseModel):
    """A detected line segment with canonically ordered endpoints.

    ``top`` is always the endpoint with the smaller row. Rows are the
    continuous (sub-pixel) row coordinates of the endpoints and double as
    the capture time of each endpoint in row units.
    """

    id: int = Field(..., ge=0, description="Segment identifier, stable across pruning")
    top: Tuple[float, float] = Field(..., description="Pixel endpoint with the smaller row")
    bottom: Tuple[float, float] = Field(..., description="Pixel endpoint with the larger row")
    top_n: NormalizedPoint = Field(..., description="Normalized top endpoint")
    bottom_n: NormalizedPoint = Field(..., description="Normalized bottom endpoint")
    rows: Tuple[float, float] = Field(..., description="(row_top, row_bottom)")
    length_px: float = Field(..., ge=0, description="Euclidean pixel length")

    @model_validator(mode="after")
    def validate_ordering(self) -> "SegmentRs":
        """Enforce row_top < row_bottom and a consistent length."""
        if not self.rows[0] < self.rows[1]:
            raise ValueError(f"Segment {self.id}: row_top must be < row_bottom, got {self.rows}")
        if self.rows != (self.top[1], self.bottom[1]):
            raise ValueError(f"Segment {self.id}: rows do not match endpoints")
        expected = math.hypot(self.bottom[0] - self.top[0], self.bottom[1] - self.top[1])
        if abs(expected - self.length_px) > 1e-9 * max(1.0, expected):
            raise ValueError(f"Segment {self.id}: length_px {self.length_px} != {expected}")
        return self

    @classmethod
    def from_pixels(
        cls,
        segment_id: int,
        first: Pixel,
        second: Pixel,
        camera: CameraModel,
    ) -> "SegmentRs":
        """Build a segment from two pixel endpoints in any order.

        Args:
            segment_id: Identifier to attach
            first: One endpoint (px, py)
            second: The other endpoint
            camera: Camera used to normalize the endpoints

        Returns:
            Segment with canonical endpoint ordering
        """
        a = (float(first[0]), float(first[1]))
        b = (float(second[0]), float(second[1]))
        top, bottom = (a, b) if a[1] <= b[1] else (b, a)
        return cls(
            id=segment_id,
            top=top,
            bottom=bottom,
            top_n=camera.normalize(top),
            bottom_n=camera.normalize(bottom),
            rows=(top[1], bottom[1]),
            length_px=math.hypot(bottom[0] - top[0], bottom[1] - top[1]),
        )

    @property
    def midpoint_x(self) -> float:
        """Normalized column of the segment midpoint."""
        return 0.5 * (self.top_n.x + self.bottom_n.x)

    def algebraic_vertical_error(self) -> float:
        """|(u x v) . e_y| of the raw normalized endpoints."""
        return abs(self.top_n.x - self.bottom_n.x)

    model_config = ConfigDict(frozen=True)
