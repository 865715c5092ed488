"""Image lines where the walls meet the ground."""
import math
from typing import Tuple

import numpy as np

from ackermann_rs.models import CameraModel, RsModel


def _polyline(cam: CameraModel, column_of) -> np.ndarray:
    start = max(0, math.ceil(cam.cy))
    rows = np.arange(start, cam.height, dtype=float)
    _, y = cam.normalize_arrays(np.zeros_like(rows), rows)
    keep = y > 0
    rows, y = rows[keep], y[keep]
    cols = cam.focal_px * column_of(y) + cam.cx
    inside = (cols >= 0) & (cols <= cam.width - 1)
    return np.column_stack([cols[inside], rows[inside]])


def plane_boundaries(model: RsModel, cam: CameraModel) -> Tuple[np.ndarray, np.ndarray]:
    """Left and right wall/ground boundaries as (N, 2) pixel polylines.

    The left wall meets the ground where delta - x = lambda_ground * y, the
    right wall where lambda * (x - delta) = lambda_ground * y, for y > 0.
    Points outside the frame are clipped away.
    """
    lam = model.depth.lambda_right
    ground = model.depth.lambda_ground
    if lam is None or lam <= 0 or ground <= 0:
        raise ValueError("Boundaries need positive lambda and lambda_ground")
    delta = model.delta
    left = _polyline(cam, lambda y: delta - ground * y)
    right = _polyline(cam, lambda y: delta + ground * y / lam)
    return left, right
