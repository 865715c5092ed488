"""Per-pixel forward map from the RS image to the compensated image."""
import logging
from dataclasses import dataclass

import numpy as np

from ackermann_rs.geometry.compensation import SINGULAR_TOL, _inverse_depth_with_slope
from ackermann_rs.models import CameraModel, RsModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ForwardMap:
    """Target pixel coordinates of every source pixel."""

    target_x: np.ndarray
    target_y: np.ndarray
    valid: np.ndarray

    @property
    def shape(self):
        return self.target_x.shape

    def displacement(self) -> np.ndarray:
        """Length of each pixel's move, NaN where invalid."""
        h, w = self.shape
        rows, cols = np.mgrid[0:h, 0:w]
        d = np.hypot(self.target_x - cols, self.target_y - rows)
        return np.where(self.valid, d, np.nan)


def _build_with_slope(model: RsModel, cam: CameraModel, left_slope: float) -> ForwardMap:
    rows, cols = np.mgrid[0 : cam.height, 0 : cam.width].astype(float)
    x, y = cam.normalize_arrays(cols, rows)
    s_inv = _inverse_depth_with_slope(x, model.depth, left_slope, include_ground=True, p2=y)
    k = model.alpha * rows
    denom = 1.0 - 2.0 * x * k
    m = model.beta * rows * s_inv
    valid = np.abs(denom) >= SINGULAR_TOL
    safe = np.where(valid, denom, 1.0)
    p1 = (1.0 - m) * (x + 2.0 * k) / safe + m * k
    p2 = (1.0 - m) * y / safe
    target_x = cols + cam.focal_px * (p1 - x)
    target_y = rows + cam.focal_px * (p2 - y)
    valid &= np.isfinite(target_x) & np.isfinite(target_y)
    if not valid.all():
        logger.warning(f"Forward map: {int((~valid).sum())} singular pixels masked")
    return ForwardMap(target_x=target_x, target_y=target_y, valid=valid)


def build_forward_map(model: RsModel, cam: CameraModel) -> ForwardMap:
    """Forward map of ``model`` over the full frame.

    Inverse depth is the max of the wall branches and the ground branch
    ``y * lambda_ground``, all evaluated at RS coordinates with t = row.
    """
    return _build_with_slope(model, cam, 1.0)
