"""Rectification quality when the camera height handed to the warp is wrong."""
import logging
from typing import Callable, List, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ackermann_rs.models import RansacConfig, SolverVariant
from ackermann_rs.pipeline import CompensationPipeline
from ackermann_rs.rectify import mean_abs_intensity_error
from ackermann_rs.simulator import (
    GROUND_PLANE,
    MotionTruth,
    SceneConfig,
    gs_plane_ids,
    make_scene,
    render_gs_image,
    render_rs_image,
    render_segments,
)

from .sweep import STATUS_OK

logger = logging.getLogger(__name__)

HEIGHT_ERROR_COLUMNS = [
    "height_error_m",
    "assumed_height_m",
    "lambda_ground",
    "valid_fraction",
    "intensity_error",
    "ground_intensity_error",
    "status",
]


class HeightErrorConfig(BaseModel):
    """One rendered frame rectified under a range of assumed camera heights."""

    height_errors_m: List[float] = Field(
        default_factory=lambda: [-0.3, -0.2, -0.1, 0.0, 0.1, 0.2, 0.3],
        description="Assumed minus true camera height",
    )
    speed_kmh: float = Field(60.0, description="Translational velocity of the frame")
    angular_deg_s: float = Field(40.0, description="Angular velocity of the frame")
    variant: SolverVariant = Field(SolverVariant.FOUR_LINE, description="Minimal solver")
    scene: SceneConfig = Field(
        default_factory=lambda: SceneConfig(pixel_noise_std=0.3, outlier_fraction=0.2),
        description="Scene rendered once for all heights",
    )
    ransac: RansacConfig = Field(default_factory=RansacConfig, description="RANSAC settings")
    seed: int = Field(0, ge=0, description="Seed of scene, noise and RANSAC")

    @model_validator(mode="after")
    def validate_heights(self) -> "HeightErrorConfig":
        if not self.height_errors_m:
            raise ValueError("height_errors_m must not be empty")
        lowest = self.scene.camera_height_m + min(self.height_errors_m)
        if lowest <= 0:
            raise ValueError(f"Assumed camera height must stay positive, got {lowest:.3f} m")
        return self

    model_config = ConfigDict(frozen=True)


def run_height_error(
    cfg: HeightErrorConfig,
    progress_callback: Optional[Callable[[int, int], None]] = None,
) -> pd.DataFrame:
    """Estimate the motion of one frame, then rectify it once per assumed height.

    The intensity error is measured against the GS rendering over the
    pixels the warp fills, and separately over those that see the ground,
    where the height enters the depth.

    Returns:
        One row per height error with the columns of ``HEIGHT_ERROR_COLUMNS``
    """
    scene = cfg.scene
    motion = MotionTruth(angular_velocity=cfg.angular_deg_s, translational_velocity=cfg.speed_kmh)
    gs_image = render_gs_image(scene)
    rs_image = render_rs_image(gs_image, motion, scene)
    ground = gs_plane_ids(scene) == GROUND_PLANE
    segments = render_segments(make_scene(scene, cfg.seed), motion, scene, seed=cfg.seed).segments
    ransac = cfg.ransac.model_copy(update={"rng_seed": cfg.seed})
    logger.info(
        f"Height error: {len(cfg.height_errors_m)} heights at "
        f"{cfg.speed_kmh:g} km/h, {cfg.angular_deg_s:g} deg/s"
    )

    rows = []
    for error in cfg.height_errors_m:
        assumed = scene.camera_height_m + error
        lambda_ground = scene.gauge_length_m / assumed
        row = {
            "height_error_m": error,
            "assumed_height_m": assumed,
            "lambda_ground": lambda_ground,
            "valid_fraction": np.nan,
            "intensity_error": np.nan,
            "ground_intensity_error": np.nan,
            "status": STATUS_OK,
        }
        pipeline = CompensationPipeline(scene.camera(), ransac, cfg.variant)
        summary = pipeline.process(segments, image=rs_image, lambda_ground=lambda_ground)
        if summary["success"]:
            warped = summary["rectified"]
            valid = warped > 0
            row.update(
                {
                    "valid_fraction": float(valid.mean()),
                    "intensity_error": mean_abs_intensity_error(warped, gs_image, valid),
                    "ground_intensity_error": mean_abs_intensity_error(
                        warped, gs_image, valid & ground
                    ),
                }
            )
        else:
            row["status"] = summary["error_type"]
            logger.warning(f"Height error {error:+.2f} m: {summary['error']}")
        rows.append(row)
        if progress_callback:
            progress_callback(len(rows), len(cfg.height_errors_m))
    return pd.DataFrame(rows, columns=HEIGHT_ERROR_COLUMNS)
