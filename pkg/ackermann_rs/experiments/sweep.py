"""Monte-Carlo sweep over translational and angular velocity."""
import logging
import math
import time
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ackermann_rs.exceptions import (
    AckermannRsError,
    EstimationFailedError,
    InsufficientDataError,
)
from ackermann_rs.models import (
    CameraModel,
    RansacConfig,
    SegmentRs,
    SolverVariant,
    physical_from_rates,
)
from ackermann_rs.pipeline import CompensationPipeline
from ackermann_rs.simulator import MotionTruth, SceneConfig, make_scene, render_segments

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

SWEEP_COLUMNS = [
    "schema_version",
    "variant",
    "cell",
    "trial",
    "seed",
    "true_speed_kmh",
    "true_angular_deg_s",
    "rendered_speed_kmh",
    "rendered_angular_deg_s",
    "est_speed_kmh",
    "est_angular_deg_s",
    "est_alpha_row",
    "est_beta_row",
    "segments",
    "inliers",
    "iterations",
    "wall_time_s",
    "status",
]

STATUS_OK = "ok"
STATUS_CODES = {
    InsufficientDataError: "insufficient_data",
    EstimationFailedError: "estimation_failed",
}


def _arange(start: float, stop: float, step: float) -> List[float]:
    return [float(v) for v in np.arange(start, stop + step / 2, step)]


class SweepConfig(BaseModel):
    """Velocity grid, trial count and corruption of a sweep."""

    speeds_kmh: List[float] = Field(
        default_factory=lambda: _arange(10, 140, 10), description="Translational velocities"
    )
    angular_deg_s: List[float] = Field(
        default_factory=lambda: _arange(10, 70, 10), description="Angular velocities"
    )
    trials: int = Field(5, ge=1, description="Trials per grid cell")
    variant: SolverVariant = Field(SolverVariant.FOUR_LINE, description="Minimal solver")
    scene: SceneConfig = Field(
        default_factory=lambda: SceneConfig(pixel_noise_std=0.3, outlier_fraction=0.2),
        description="Scene rendered for every trial",
    )
    ransac: RansacConfig = Field(default_factory=RansacConfig, description="RANSAC settings")
    motion_noise_kmh: float = Field(2.0, ge=0, description="Speed noise while rendering")
    motion_noise_deg_s: float = Field(2.0, ge=0, description="Yaw-rate noise while rendering")
    imu_noise_deg: float = Field(0.0, ge=0, description="Roll/pitch error of the vertical direction")
    gauge_error_m: float = Field(0.0, description="Error on the left-wall distance used for km/h")
    base_seed: int = Field(0, ge=0, description="Seed of the first trial")

    @field_validator("speeds_kmh", "angular_deg_s")
    @classmethod
    def validate_grid(cls, v: List[float]) -> List[float]:
        if not v:
            raise ValueError("Velocity grid must not be empty")
        if not all(math.isfinite(x) for x in v):
            raise ValueError("Velocities must be finite")
        return v

    @property
    def cells(self) -> List[tuple]:
        """(speed, angular) pairs, speed-major."""
        return list(product(self.speeds_kmh, self.angular_deg_s))

    def trial_seed(self, cell: int, trial: int) -> int:
        return self.base_seed + cell * 1000 + trial

    model_config = ConfigDict(frozen=True)


def perturb_vertical(
    segments: Sequence[SegmentRs],
    camera: CameraModel,
    std_deg: float,
    rng: np.random.Generator,
) -> List[SegmentRs]:
    """Pre-rotate segment endpoints by a random roll and pitch.

    Mimics a vertical direction estimated with error ``std_deg`` per axis.
    Segments whose endpoints collapse onto one row are dropped.
    """
    if std_deg <= 0 or not segments:
        return list(segments)
    roll, pitch = np.radians(rng.normal(0.0, std_deg, size=2))
    cr, sr, cp, sp = math.cos(roll), math.sin(roll), math.cos(pitch), math.sin(pitch)
    rot_z = np.array([[cr, -sr, 0.0], [sr, cr, 0.0], [0.0, 0.0, 1.0]])
    rot_x = np.array([[1.0, 0.0, 0.0], [0.0, cp, -sp], [0.0, sp, cp]])
    k = np.array(
        [[camera.focal_px, 0.0, camera.cx], [0.0, camera.focal_px, camera.cy], [0.0, 0.0, 1.0]]
    )
    homography = k @ rot_x @ rot_z @ np.linalg.inv(k)

    out = []
    for seg in segments:
        ends = []
        for px, py in (seg.top, seg.bottom):
            q = homography @ np.array([px, py, 1.0])
            ends.append((float(q[0] / q[2]), float(q[1] / q[2])))
        if ends[0][1] == ends[1][1]:
            continue
        out.append(SegmentRs.from_pixels(seg.id, ends[0], ends[1], camera))
    return out


def run_trial(cfg: SweepConfig, cell: int, trial: int) -> Dict[str, object]:
    """Render, estimate and score one seeded trial.

    Failures are recorded in ``status``; the row is always complete.
    """
    speed, angular = cfg.cells[cell]
    seed = cfg.trial_seed(cell, trial)
    rng = np.random.default_rng(seed)
    rendered = MotionTruth(
        angular_velocity=angular + rng.normal(0.0, 1.0) * cfg.motion_noise_deg_s,
        translational_velocity=speed + rng.normal(0.0, 1.0) * cfg.motion_noise_kmh,
    )
    row: Dict[str, object] = {
        "schema_version": SCHEMA_VERSION,
        "variant": cfg.variant.value,
        "cell": cell,
        "trial": trial,
        "seed": seed,
        "true_speed_kmh": speed,
        "true_angular_deg_s": angular,
        "rendered_speed_kmh": rendered.translational_velocity,
        "rendered_angular_deg_s": rendered.angular_velocity,
        "est_speed_kmh": np.nan,
        "est_angular_deg_s": np.nan,
        "est_alpha_row": np.nan,
        "est_beta_row": np.nan,
        "segments": 0,
        "inliers": 0,
        "iterations": 0,
        "wall_time_s": 0.0,
        "status": STATUS_OK,
    }

    camera = cfg.scene.camera()
    scene = make_scene(cfg.scene, seed)
    segments = render_segments(scene, rendered, cfg.scene, seed=seed).segments
    segments = perturb_vertical(segments, camera, cfg.imu_noise_deg, rng)
    row["segments"] = len(segments)

    ransac = cfg.ransac.model_copy(update={"rng_seed": seed})
    pipeline = CompensationPipeline(camera, ransac, cfg.variant)
    start = time.perf_counter()
    try:
        result = pipeline.estimate(segments)
    except AckermannRsError as e:
        row["wall_time_s"] = time.perf_counter() - start
        row["status"] = STATUS_CODES.get(type(e), "error")
        logger.warning(f"Trial cell={cell} trial={trial} failed: {e}")
        return row
    row["wall_time_s"] = time.perf_counter() - start

    angular_est, speed_est = physical_from_rates(
        result.model.alpha,
        result.model.beta,
        cfg.scene.row_delay,
        cfg.scene.gauge_length_m + cfg.gauge_error_m,
    )
    row.update(
        {
            "est_speed_kmh": speed_est,
            "est_angular_deg_s": angular_est,
            "est_alpha_row": result.model.alpha,
            "est_beta_row": result.model.beta,
            "inliers": result.best_inlier_count,
            "iterations": result.iterations_run,
        }
    )
    return row


def run_sweep(
    cfg: SweepConfig,
    progress_callback: Optional[Callable[[int, int], None]] = None,
) -> pd.DataFrame:
    """Run every trial of every cell.

    Args:
        cfg: Sweep configuration
        progress_callback: Called with (done, total) after each trial

    Returns:
        One row per trial with the columns of ``SWEEP_COLUMNS``
    """
    total = len(cfg.cells) * cfg.trials
    logger.info(f"Sweep: {len(cfg.cells)} cells x {cfg.trials} trials ({cfg.variant.value})")
    rows = []
    for cell in range(len(cfg.cells)):
        for trial in range(cfg.trials):
            rows.append(run_trial(cfg, cell, trial))
            if progress_callback:
                progress_callback(len(rows), total)
    frame = pd.DataFrame(rows, columns=SWEEP_COLUMNS)
    failed = int((frame["status"] != STATUS_OK).sum())
    if failed:
        logger.warning(f"{failed} of {total} trials failed")
    return frame


def summarize_sweep(frame: pd.DataFrame) -> pd.DataFrame:
    """Per-cell median and mean of the estimates over successful trials."""
    ok = frame[frame["status"] == STATUS_OK]
    grouped = ok.groupby(["true_speed_kmh", "true_angular_deg_s"], sort=True)
    summary = grouped.agg(
        trials=("trial", "count"),
        median_speed_kmh=("est_speed_kmh", "median"),
        mean_speed_kmh=("est_speed_kmh", "mean"),
        median_angular_deg_s=("est_angular_deg_s", "median"),
        mean_angular_deg_s=("est_angular_deg_s", "mean"),
    ).reset_index()
    summary["speed_rel_error"] = (
        (summary["median_speed_kmh"] - summary["true_speed_kmh"]).abs() / summary["true_speed_kmh"]
    )
    summary["angular_rel_error"] = (
        (summary["median_angular_deg_s"] - summary["true_angular_deg_s"]).abs()
        / summary["true_angular_deg_s"]
    )
    return summary
