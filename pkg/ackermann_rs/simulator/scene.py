"""Random vertical lines on the walls of the synthetic scene."""
import logging
import math
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ackermann_rs.models import SideLabel

from .config import SceneConfig

logger = logging.getLogger(__name__)

Point3 = Tuple[float, float, float]

MAX_ATTEMPTS = 20


class SceneLine(BaseModel):
    """A 3D line segment in the GS camera frame (metres, y down)."""

    top: Point3 = Field(..., description="Endpoint with the smaller Y")
    bottom: Point3 = Field(..., description="Endpoint with the larger Y")
    wall: SideLabel = Field(..., description="Wall the line was placed on")
    label: SideLabel = Field(..., description="Wall, or outlier for tilted lines")

    model_config = ConfigDict(frozen=True)


class ScenePlane(BaseModel):
    """Plane n . P = offset in the GS camera frame."""

    name: str
    normal: Point3
    offset: float

    model_config = ConfigDict(frozen=True)


def scene_planes(cfg: SceneConfig) -> List[ScenePlane]:
    """Left wall, right wall and ground of ``cfg``."""
    lat = cfg.lateral_axis()
    return [
        ScenePlane(name="left", normal=lat, offset=-cfg.left_plane_dist_m),
        ScenePlane(name="right", normal=lat, offset=cfg.right_plane_dist_m),
        ScenePlane(name="ground", normal=(0.0, 1.0, 0.0), offset=cfg.camera_height_m),
    ]


def _wall_base(cfg: SceneConfig, wall: SideLabel, along: float) -> np.ndarray:
    lat = np.array(cfg.lateral_axis())
    fwd = np.array(cfg.forward_axis())
    dist = -cfg.left_plane_dist_m if wall is SideLabel.LEFT else cfg.right_plane_dist_m
    return dist * lat + along * fwd


def _along_for_column(cfg: SceneConfig, wall: SideLabel, x: float) -> float:
    """Distance along the wall at which the wall is seen at normalized column x."""
    c, s = math.cos(cfg.yaw), math.sin(cfg.yaw)
    if wall is SideLabel.LEFT:
        return cfg.left_plane_dist_m * (c + x * s) / (s - x * c)
    return cfg.right_plane_dist_m * (c + x * s) / (x * c - s)


def _column_interval(cfg: SceneConfig, wall: SideLabel) -> Tuple[float, float]:
    cam = cfg.camera()
    x_lo = (cfg.margin_px - cam.cx) / cam.focal_px
    x_hi = (cfg.width - 1 - cfg.margin_px - cam.cx) / cam.focal_px
    far = _wall_base(cfg, wall, cfg.max_depth_m)
    x_far = far[0] / far[2]
    if wall is SideLabel.LEFT:
        return x_lo, min(x_far, x_hi)
    return max(x_far, x_lo), x_hi


def make_scene(cfg: SceneConfig, seed: int) -> List[SceneLine]:
    """Sample vertical lines on both walls, some tilted into outliers.

    Args:
        cfg: Scene configuration
        seed: Seed of the line generator

    Returns:
        Lines ordered left wall first, then right wall
    """
    rng = np.random.default_rng(seed)
    cam = cfg.camera()
    y_lo = (cfg.margin_px - cam.cy) / cam.focal_px
    y_hi = (cfg.height - 1 - cfg.margin_px - cam.cy) / cam.focal_px
    e_y = np.array([0.0, 1.0, 0.0])
    lat = np.array(cfg.lateral_axis())

    lines: List[SceneLine] = []
    for wall in (SideLabel.LEFT, SideLabel.RIGHT):
        x_min, x_max = _column_interval(cfg, wall)
        if x_min >= x_max:
            logger.warning(f"No visible stretch of the {wall.value} wall")
            continue
        for _ in range(cfg.n_lines_per_plane):
            for _attempt in range(MAX_ATTEMPTS):
                x = rng.uniform(x_min, x_max)
                length = rng.uniform(*cfg.line_length_range_m)
                is_outlier = rng.uniform() < cfg.outlier_fraction
                tilt = math.radians(rng.uniform(*cfg.outlier_tilt_deg)) * rng.choice([-1.0, 1.0])

                base = _wall_base(cfg, wall, _along_for_column(cfg, wall, x))
                depth = base[2]
                y_bottom = min(cfg.camera_height_m, depth * y_hi)
                y_top = max(y_bottom - length, depth * y_lo)
                if cfg.focal_px * (y_bottom - y_top) / depth >= cfg.min_segment_len_px + 5.0:
                    break
            else:
                logger.debug(f"Gave up placing a line on the {wall.value} wall")
                continue

            top = base + y_top * e_y
            bottom = base + y_bottom * e_y
            label = wall
            if is_outlier:
                mid = 0.5 * (top + bottom)
                half = 0.5 * (y_bottom - y_top)
                direction = math.cos(tilt) * e_y + math.sin(tilt) * lat
                top, bottom = mid - half * direction, mid + half * direction
                label = SideLabel.OUTLIER
            lines.append(
                SceneLine(
                    top=tuple(float(v) for v in top),
                    bottom=tuple(float(v) for v in bottom),
                    wall=wall,
                    label=label,
                )
            )
    logger.info(
        f"Scene: {len(lines)} lines, "
        f"{sum(l.label is SideLabel.OUTLIER for l in lines)} outliers"
    )
    return lines
