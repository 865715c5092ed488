"""Rolling-shutter projection of 3D points.

A point is seen on row r at time t = tau * r, so its RS image position is
a fixed point of "project with the pose at the time of my own row".
"""
import logging
import math
from typing import NamedTuple, Optional, Tuple

import numpy as np

from ackermann_rs.geometry import PoseRT, compensate_point, exact_pose, inverse_depth
from ackermann_rs.models import CameraModel, DepthModel, NormalizedPoint, RsModel

from .config import MotionTruth

logger = logging.getLogger(__name__)

ROW_TOL = 1e-6
MAX_ITERATIONS = 50
INVERSE_TOL = 1e-15
MAX_INVERSE_ITERATIONS = 100


class RsProjection(NamedTuple):
    """Sub-pixel RS position, the iterations the row search took and the
    GS depth (metres) of the point that was actually projected."""

    pixel: Tuple[float, float]
    iterations: int
    depth_m: float = math.nan


def exact_pose_at_row(motion: MotionTruth, row_delay: float, row: float) -> PoseRT:
    """Exact circular-arc pose after ``row`` rows (metres)."""
    t = row_delay * row
    theta = motion.omega * t
    if motion.omega == 0.0:
        rho = motion.speed * t
    else:
        rho = 2.0 * (motion.speed / motion.omega) * math.sin(theta / 2.0)
    return exact_pose(theta, rho)


def solve_rs_row(point: np.ndarray, motion: MotionTruth, cam: CameraModel) -> Optional[RsProjection]:
    """Fixed-point search for the row on which ``point`` is captured.

    Returns:
        Projection, or None when the point is behind the camera, the
        iteration does not settle, or the row leaves the frame
    """
    point = np.asarray(point, dtype=float)
    if point[2] <= 0:
        return None
    row = cam.focal_px * point[1] / point[2] + cam.cy
    for iteration in range(1, MAX_ITERATIONS + 1):
        p_a = exact_pose_at_row(motion, cam.row_delay, row).apply(point)
        if p_a[2] <= 0:
            return None
        new_row = cam.focal_px * p_a[1] / p_a[2] + cam.cy
        col = cam.focal_px * p_a[0] / p_a[2] + cam.cx
        if abs(new_row - row) < ROW_TOL:
            if not 0.0 <= new_row <= cam.height - 1:
                return None
            return RsProjection(
                pixel=(float(col), float(new_row)), iterations=iteration, depth_m=float(point[2])
            )
        row = new_row
    logger.debug(f"Row search did not converge for point {point}")
    return None


def solve_rs_row_planar(
    point: np.ndarray,
    motion: MotionTruth,
    cam: CameraModel,
    depth: DepthModel,
    gauge_m: float,
) -> Optional[RsProjection]:
    """Row search with the depth read off the wall model at the RS column.

    The GS ray of ``point`` is kept; its depth is ``gauge_m / s_inv(x_rs)``
    where ``x_rs`` is the column the point lands on. Solving jointly for
    the column and the row makes the rendered point obey the same depth
    the compensation map uses, so only the pose order separates the two.

    Returns:
        Projection with the depth actually used, or None when the column
        sees no wall, the point goes behind the camera, the iteration does
        not settle, or the row leaves the frame
    """
    point = np.asarray(point, dtype=float)
    if point[2] <= 0:
        return None
    ray = point / point[2]
    x_rs, y_rs = ray[0], ray[1]
    for iteration in range(1, MAX_ITERATIONS + 1):
        s_inv = inverse_depth(x_rs, depth)
        if s_inv <= 0:
            return None
        z = gauge_m / s_inv
        row = cam.focal_px * y_rs + cam.cy
        p_a = exact_pose_at_row(motion, cam.row_delay, row).apply(z * ray)
        if p_a[2] <= 0:
            return None
        new_x, new_y = p_a[0] / p_a[2], p_a[1] / p_a[2]
        moved = cam.focal_px * max(abs(new_x - x_rs), abs(new_y - y_rs))
        x_rs, y_rs = new_x, new_y
        if moved < ROW_TOL:
            col = cam.focal_px * x_rs + cam.cx
            new_row = cam.focal_px * y_rs + cam.cy
            if not 0.0 <= new_row <= cam.height - 1:
                return None
            return RsProjection(
                pixel=(float(col), float(new_row)), iterations=iteration, depth_m=float(z)
            )
    logger.debug(f"Planar row search did not converge for point {point}")
    return None


def project_rs_exact(point: np.ndarray, motion: MotionTruth, cam: CameraModel) -> Optional[Tuple[float, float]]:
    """RS pixel of a 3D point under the exact Ackermann pose, or None."""
    found = solve_rs_row(point, motion, cam)
    return None if found is None else found.pixel


def project_rs_planar(
    point: np.ndarray,
    motion: MotionTruth,
    cam: CameraModel,
    depth: DepthModel,
    gauge_m: float,
) -> Optional[Tuple[float, float]]:
    """RS pixel under the exact pose with RS-column wall depth, or None."""
    found = solve_rs_row_planar(point, motion, cam, depth, gauge_m)
    return None if found is None else found.pixel


def project_gs(point: np.ndarray, cam: CameraModel) -> Tuple[float, float]:
    """Pinhole projection at time 0."""
    point = np.asarray(point, dtype=float)
    return (
        float(cam.focal_px * point[0] / point[2] + cam.cx),
        float(cam.focal_px * point[1] / point[2] + cam.cy),
    )


def invert_compensation(
    p_gs: NormalizedPoint,
    model: RsModel,
    cam: CameraModel,
) -> Optional[NormalizedPoint]:
    """RS point whose compensation lands on ``p_gs``.

    The row of the RS point follows from its own normalized y, so the
    solution is a fixed point p <- p + (p_gs - C(p)).
    """
    x, y = p_gs.x, p_gs.y
    for _ in range(MAX_INVERSE_ITERATIONS):
        row = cam.focal_px * y + cam.cy
        comp = compensate_point(NormalizedPoint(x=x, y=y), row, model)
        dx, dy = p_gs.x - comp[0], p_gs.y - comp[1]
        x, y = x + dx, y + dy
        if abs(dx) < INVERSE_TOL and abs(dy) < INVERSE_TOL:
            return NormalizedPoint(x=x, y=y)
    # float noise can stall the last digits; accept a tight residual
    row = cam.focal_px * y + cam.cy
    comp = compensate_point(NormalizedPoint(x=x, y=y), row, model)
    if max(abs(p_gs.x - comp[0]), abs(p_gs.y - comp[1])) < 1e-13:
        return NormalizedPoint(x=x, y=y)
    logger.debug(f"Compensation inverse did not converge at {p_gs}")
    return None


def project_rs_second_order(
    point: np.ndarray,
    model: RsModel,
    cam: CameraModel,
) -> Optional[Tuple[float, float]]:
    """RS pixel of a 3D point consistent with the solvers' compensation map."""
    gs = project_gs(point, cam)
    p_rs = invert_compensation(cam.normalize(gs), model, cam)
    if p_rs is None:
        return None
    px, py = cam.denormalize(p_rs)
    if not 0.0 <= py <= cam.height - 1:
        return None
    return (px, py)
