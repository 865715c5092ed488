"""Rendering of RS segments and RS/GS images from the synthetic scene."""
import logging
from typing import List, Optional, Sequence, Tuple

import cv2
import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ackermann_rs.models import RsModel, SegmentRs, SideLabel

from .config import MotionTruth, SceneConfig
from .projection import (
    exact_pose_at_row,
    project_gs,
    project_rs_exact,
    project_rs_planar,
    project_rs_second_order,
)
from .scene import SceneLine, scene_planes

logger = logging.getLogger(__name__)

# index of the ground in scene_planes
GROUND_PLANE = 2


class RenderedSegments(BaseModel):
    """Distorted segments with everything an evaluation needs to score them."""

    segments: List[SegmentRs] = Field(default_factory=list, description="RS segments")
    labels: List[SideLabel] = Field(default_factory=list, description="True label per segment")
    gs_segments: List[SegmentRs] = Field(
        default_factory=list, description="Undistorted projection of the same lines, same ids"
    )
    true_model: RsModel = Field(..., description="Second-order model of the rendering motion")
    dropped: int = Field(0, ge=0, description="Lines lost to projection or framing")

    @property
    def inlier_count(self) -> int:
        return sum(label is not SideLabel.OUTLIER for label in self.labels)

    model_config = ConfigDict(frozen=True)


def _inside(pixel: Tuple[float, float], width: int, height: int) -> bool:
    return 0.0 <= pixel[0] <= width - 1 and 0.0 <= pixel[1] <= height - 1


def render_segments(
    scene: Sequence[SceneLine],
    motion: MotionTruth,
    cfg: SceneConfig,
    noise_std: Optional[float] = None,
    seed: int = 0,
) -> RenderedSegments:
    """Project scene lines into distorted RS segments.

    Args:
        scene: Lines from :func:`make_scene`
        motion: Motion during readout
        cfg: Scene configuration (camera, pose order, depth convention, length filter)
        noise_std: Endpoint noise in pixels; defaults to ``cfg.pixel_noise_std``
        seed: Seed of the noise generator

    Returns:
        Segments kept inside the frame with their labels and GS twins
    """
    cam = cfg.camera()
    true_model = motion.true_model(cfg)
    depth, gauge_m = cfg.depth_model(), cfg.gauge_length_m
    sigma = cfg.pixel_noise_std if noise_std is None else noise_std
    rng = np.random.default_rng(seed)

    segments: List[SegmentRs] = []
    gs_segments: List[SegmentRs] = []
    labels: List[SideLabel] = []
    dropped = 0
    for line in scene:
        noise = rng.normal(0.0, 1.0, size=4) * sigma
        ends = []
        for point in (np.array(line.top), np.array(line.bottom)):
            if cfg.model_order == "second_order":
                ends.append(project_rs_second_order(point, true_model, cam))
            elif cfg.depth_convention == "physical":
                ends.append(project_rs_exact(point, motion, cam))
            else:
                ends.append(project_rs_planar(point, motion, cam, depth, gauge_m))
        if ends[0] is None or ends[1] is None:
            dropped += 1
            continue
        top = (ends[0][0] + noise[0], ends[0][1] + noise[1])
        bottom = (ends[1][0] + noise[2], ends[1][1] + noise[3])
        if not (_inside(top, cfg.width, cfg.height) and _inside(bottom, cfg.width, cfg.height)):
            dropped += 1
            continue
        if top[1] == bottom[1]:
            dropped += 1
            continue
        seg = SegmentRs.from_pixels(len(segments), top, bottom, cam)
        if seg.length_px < cfg.min_segment_len_px:
            dropped += 1
            continue
        segments.append(seg)
        gs_segments.append(
            SegmentRs.from_pixels(
                seg.id, project_gs(np.array(line.top), cam), project_gs(np.array(line.bottom), cam), cam
            )
        )
        labels.append(line.label)
    if dropped:
        logger.warning(f"Dropped {dropped} of {len(scene)} lines while rendering")
    return RenderedSegments(
        segments=segments,
        labels=labels,
        gs_segments=gs_segments,
        true_model=true_model,
        dropped=dropped,
    )


def _texture(points: np.ndarray, plane: np.ndarray) -> np.ndarray:
    """Smooth procedural intensity of world points (H, W, 3) hit on ``plane`` ids."""
    x, y, z = points[..., 0], points[..., 1], points[..., 2]
    depth_fade = np.exp(-np.clip(z, 0.0, None) / 12.0)
    walls = 0.5 + 0.5 * np.sin(2.0 * np.pi * z / 1.6) * np.cos(2.0 * np.pi * y / 2.4)
    ground = 0.5 + 0.5 * np.sin(2.0 * np.pi * z / 2.0) * np.cos(2.0 * np.pi * x / 1.5)
    wall_tone = np.where(plane == 0, 140.0, 100.0)
    value = np.where(
        plane == GROUND_PLANE,
        60.0 + 120.0 * ground * depth_fade,
        wall_tone + 90.0 * (walls - 0.5) * depth_fade,
    )
    return np.where(plane < 0, 200.0, value)


def _intersect(
    origin: np.ndarray,
    directions: np.ndarray,
    cfg: SceneConfig,
) -> Tuple[np.ndarray, np.ndarray]:
    """Nearest plane hit of rays ``origin + s * d``; plane id -1 means no hit."""
    best = np.full(directions.shape[:-1], np.inf)
    plane_id = np.full(directions.shape[:-1], -1, dtype=int)
    for idx, plane in enumerate(scene_planes(cfg)):
        normal = np.array(plane.normal)
        denom = directions @ normal
        with np.errstate(divide="ignore", invalid="ignore"):
            s = (plane.offset - normal @ origin) / denom
        hit = (denom != 0) & (s > 0) & (s < best)
        best = np.where(hit, s, best)
        plane_id = np.where(hit, idx, plane_id)
    return best, plane_id


def _pixel_rays(cfg: SceneConfig, rows: np.ndarray) -> np.ndarray:
    cam = cfg.camera()
    cols = np.arange(cfg.width, dtype=float)
    xs = (cols - cam.cx) / cam.focal_px
    ys = (rows - cam.cy) / cam.focal_px
    xx, yy = np.meshgrid(xs, ys)
    return np.stack([xx, yy, np.ones_like(xx)], axis=-1)


def render_gs_image(cfg: SceneConfig) -> np.ndarray:
    """Undistorted grayscale view of the textured scene (uint8, H x W)."""
    rays = _pixel_rays(cfg, np.arange(cfg.height, dtype=float))
    depth, plane = _intersect(np.zeros(3), rays, cfg)
    points = rays * np.where(np.isfinite(depth), depth, 0.0)[..., None]
    return np.clip(np.rint(_texture(points, plane)), 0, 255).astype(np.uint8)


def gs_plane_ids(cfg: SceneConfig) -> np.ndarray:
    """Index into :func:`scene_planes` seen by each GS pixel (H x W), -1 where none is hit."""
    rays = _pixel_rays(cfg, np.arange(cfg.height, dtype=float))
    return _intersect(np.zeros(3), rays, cfg)[1]


def render_rs_image(gs_image: np.ndarray, motion: MotionTruth, cfg: SceneConfig) -> np.ndarray:
    """Synthesise the RS image a moving camera would capture of ``gs_image``'s scene.

    Each RS row r is seen from the exact pose at t = tau * r; its rays are
    intersected with the scene planes and the hit points projected into
    the GS view, which is sampled bilinearly. Unseen sources are black.
    """
    if gs_image.shape[:2] != (cfg.height, cfg.width):
        raise ValueError(
            f"Image shape {gs_image.shape[:2]} does not match {cfg.height}x{cfg.width}"
        )
    cam = cfg.camera()
    map_x = np.empty((cfg.height, cfg.width), dtype=np.float32)
    map_y = np.empty((cfg.height, cfg.width), dtype=np.float32)
    for row in range(cfg.height):
        pose = exact_pose_at_row(motion, cam.row_delay, float(row))
        rays = _pixel_rays(cfg, np.array([float(row)]))[0] @ pose.rotation
        depth, _ = _intersect(pose.translation, rays, cfg)
        hit = np.isfinite(depth)
        points = np.where(hit[:, None], pose.translation + rays * np.where(hit, depth, 0.0)[:, None], rays)
        with np.errstate(divide="ignore", invalid="ignore"):
            src_x = cam.focal_px * points[:, 0] / points[:, 2] + cam.cx
            src_y = cam.focal_px * points[:, 1] / points[:, 2] + cam.cy
        behind = points[:, 2] <= 0
        map_x[row] = np.where(behind, -1.0, np.round(src_x, 9))
        map_y[row] = np.where(behind, -1.0, np.round(src_y, 9))
    return cv2.remap(
        gs_image,
        map_x,
        map_y,
        interpolation=cv2.INTER_LINEAR,
        borderMode=cv2.BORDER_CONSTANT,
        borderValue=0,
    )
