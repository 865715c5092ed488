"""RS -> GS point compensation, planar inverse depth and vertical residuals.

All functions work in normalized image coordinates with the row index as
time. The compensated homogeneous point always has third coordinate 1,
so a compensated segment is vertical iff both endpoints share the same x.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from ackermann_rs.exceptions import SingularConfigurationError
from ackermann_rs.models import CameraModel, DepthModel, NormalizedPoint, RsModel, SegmentRs

logger = logging.getLogger(__name__)

SINGULAR_TOL = 1e-9

ArrayLike = Union[float, np.ndarray]


def inverse_depth(
    p1: ArrayLike,
    depth: DepthModel,
    include_ground: bool = False,
    p2: Optional[ArrayLike] = None,
) -> ArrayLike:
    """Inverse scene depth at normalized column ``p1``.

    Left of delta the left wall (slope 1) is seen, right of it the right
    wall (slope lambda). With ``include_ground`` the ground plane
    ``p2 * lambda_ground`` competes through a max.

    Args:
        p1: Normalized x (scalar or array)
        depth: Scene depth model; unobservable values count as 0
        include_ground: Add the ground branch
        p2: Normalized y, required with ``include_ground``

    Returns:
        Inverse depth in gauge units, same shape as ``p1``
    """
    return _inverse_depth_with_slope(p1, depth, 1.0, include_ground, p2)


def _inverse_depth_with_slope(
    p1: ArrayLike,
    depth: DepthModel,
    left_slope: float,
    include_ground: bool = False,
    p2: Optional[ArrayLike] = None,
) -> ArrayLike:
    delta = 0.0 if depth.delta is None else depth.delta
    lam = 0.0 if depth.lambda_right is None else depth.lambda_right
    offset = np.asarray(p1, dtype=float) - delta
    walls = left_slope * np.maximum(-offset, 0.0) + lam * np.maximum(offset, 0.0)
    if include_ground:
        if p2 is None:
            raise ValueError("p2 is required when include_ground is set")
        walls = np.maximum(walls, np.asarray(p2, dtype=float) * depth.lambda_ground)
    if np.ndim(walls) == 0:
        return float(walls)
    return walls


def compensated_x(
    x: ArrayLike,
    row: ArrayLike,
    alpha: float,
    beta: float,
    s_inv: ArrayLike,
) -> ArrayLike:
    """Vectorised x of the compensated point; inf where the map is singular."""
    x = np.asarray(x, dtype=float)
    k = alpha * np.asarray(row, dtype=float)
    denom = 1.0 - 2.0 * x * k
    m = beta * np.asarray(row, dtype=float) * s_inv
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (1.0 - m) * (x + 2.0 * k) / denom + m * k
    return np.where(np.abs(denom) < SINGULAR_TOL, np.inf, out)


def _compensate_with_slope(
    p_rs: NormalizedPoint,
    row: float,
    model: RsModel,
    left_slope: float,
) -> np.ndarray:
    if model.is_zero_motion:
        return p_rs.homogeneous()
    k = model.alpha * row
    denom = 1.0 - 2.0 * p_rs.x * k
    if abs(denom) < SINGULAR_TOL:
        raise SingularConfigurationError(
            f"Compensation denominator {denom:.3e} at x={p_rs.x}, row={row}"
        )
    s_inv = _inverse_depth_with_slope(p_rs.x, model.depth, left_slope)
    m = model.beta * row * s_inv
    scale = (1.0 - m) / denom
    # first-order yaw by 2k about the y axis
    rotation = np.array([[1.0, 0.0, 2.0 * k], [0.0, 1.0, 0.0], [-2.0 * k, 0.0, 1.0]])
    rotated = rotation @ p_rs.homogeneous()
    return scale * rotated + m * np.array([k, 0.0, 1.0])


def compensate_point(p_rs: NormalizedPoint, row: float, model: RsModel) -> np.ndarray:
    """Map an RS image point captured at ``row`` to its GS homogeneous point.

    Raises:
        SingularConfigurationError: If 1 - 2 x alpha row is (nearly) zero
    """
    return _compensate_with_slope(p_rs, row, model, 1.0)


def vertical_residual_algebraic(u: Sequence[float], v: Sequence[float]) -> float:
    """u3 v1 - u1 v3: zero iff the interpretation plane contains the y axis."""
    return float(u[2] * v[0] - u[0] * v[2])


def vertical_residual_px(seg: SegmentRs, model: RsModel, camera: CameraModel) -> float:
    """Horizontal pixel offset between the compensated endpoints of ``seg``."""
    u = compensate_point(seg.top_n, seg.rows[0], model)
    v = compensate_point(seg.bottom_n, seg.rows[1], model)
    return float(camera.focal_px * abs(u[0] / u[2] - v[0] / v[2]))


@dataclass(frozen=True)
class SegmentArrays:
    """Column-major view of a segment list for vectorised scoring."""

    ids: np.ndarray
    x_top: np.ndarray
    y_top: np.ndarray
    row_top: np.ndarray
    x_bottom: np.ndarray
    y_bottom: np.ndarray
    row_bottom: np.ndarray

    @classmethod
    def from_segments(cls, segments: Sequence[SegmentRs]) -> "SegmentArrays":
        return cls(
            ids=np.array([s.id for s in segments], dtype=int),
            x_top=np.array([s.top_n.x for s in segments], dtype=float),
            y_top=np.array([s.top_n.y for s in segments], dtype=float),
            row_top=np.array([s.rows[0] for s in segments], dtype=float),
            x_bottom=np.array([s.bottom_n.x for s in segments], dtype=float),
            y_bottom=np.array([s.bottom_n.y for s in segments], dtype=float),
            row_bottom=np.array([s.rows[1] for s in segments], dtype=float),
        )

    def __len__(self) -> int:
        return int(self.ids.shape[0])

    @property
    def midpoint_x(self) -> np.ndarray:
        return 0.5 * (self.x_top + self.x_bottom)

    def residuals_px(self, model: RsModel, focal_px: float) -> np.ndarray:
        """Vectorised :func:`vertical_residual_px`; singular endpoints give inf."""
        u = compensated_x(
            self.x_top,
            self.row_top,
            model.alpha,
            model.beta,
            inverse_depth(self.x_top, model.depth),
        )
        v = compensated_x(
            self.x_bottom,
            self.row_bottom,
            model.alpha,
            model.beta,
            inverse_depth(self.x_bottom, model.depth),
        )
        res = focal_px * np.abs(u - v)
        return np.where(np.isfinite(res), res, np.inf)
