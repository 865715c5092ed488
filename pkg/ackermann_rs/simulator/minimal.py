"""Noise-free minimal problems generated under the solvers' own model."""
import logging
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ackermann_rs.models import (
    CameraModel,
    NormalizedPoint,
    PlausibilityBounds,
    RsModel,
    SegmentRs,
    SideLabel,
    SolverVariant,
)

from .projection import invert_compensation

logger = logging.getLogger(__name__)

MAX_TRIES = 200


class MinimalInstance(BaseModel):
    """Segments of one minimal problem and the model that generated them."""

    variant: SolverVariant
    segments: List[SegmentRs] = Field(..., description="Left-wall segments first")
    sides: List[SideLabel] = Field(..., description="Wall of each segment")
    true_model: RsModel

    model_config = ConfigDict(frozen=True)


def segment_from_gs_column(
    segment_id: int,
    x_gs: float,
    y_range: tuple,
    model: RsModel,
    camera: CameraModel,
) -> Optional[SegmentRs]:
    """Distort a GS-vertical segment at column ``x_gs`` with ``model``."""
    ends = []
    for y in y_range:
        p_rs = invert_compensation(NormalizedPoint(x=x_gs, y=y), model, camera)
        if p_rs is None:
            return None
        ends.append(camera.denormalize(p_rs))
    if not all(camera.contains(p) for p in ends) or ends[0][1] == ends[1][1]:
        return None
    return SegmentRs.from_pixels(segment_id, ends[0], ends[1], camera)


def random_minimal_instance(
    variant: SolverVariant,
    camera: CameraModel,
    bounds: PlausibilityBounds,
    rng: np.random.Generator,
    delta_range: tuple = (-0.15, 0.15),
    lambda_range: tuple = (0.3, 1.5),
) -> MinimalInstance:
    """Draw a model inside ``bounds`` and a minimal segment set it explains exactly.

    4-LA draws full motion, 3-LA pure translation (alpha = 0), 1-LA pure
    rotation (beta = 0). Betas are positive (forward driving) and at
    least a fifth of the bound so delta stays observable.
    """
    variant = SolverVariant(variant)
    alpha = rng.uniform(-bounds.alpha_max, bounds.alpha_max)
    beta = rng.uniform(0.2 * bounds.beta_max, bounds.beta_max)
    delta = rng.uniform(*delta_range)
    lam = rng.uniform(*lambda_range)
    if variant is SolverVariant.THREE_LINE:
        alpha = 0.0
    if variant is SolverVariant.ONE_LINE:
        model = RsModel.from_parameters(alpha, 0.0, None, None)
        n_left, n_right = 1, 0
    else:
        model = RsModel.from_parameters(alpha, beta, delta, lam)
        n_left, n_right = (3, 1) if variant is SolverVariant.FOUR_LINE else (2, 1)

    x_lo, x_hi = camera.column_range()
    y_lo = -camera.cy / camera.focal_px
    y_hi = (camera.height - 1 - camera.cy) / camera.focal_px
    gap = 0.05
    segments: List[SegmentRs] = []
    sides: List[SideLabel] = []
    for side, count in ((SideLabel.LEFT, n_left), (SideLabel.RIGHT, n_right)):
        lo, hi = (x_lo + 0.05, model.delta - gap) if side is SideLabel.LEFT else (model.delta + gap, x_hi - 0.05)
        placed = 0
        for _ in range(MAX_TRIES):
            if placed == count:
                break
            x = rng.uniform(lo, hi)
            ys = np.sort(rng.uniform(y_lo + 0.02, y_hi - 0.02, size=2))
            if (ys[1] - ys[0]) * camera.focal_px < 60.0:
                continue
            seg = segment_from_gs_column(len(segments), x, (ys[0], ys[1]), model, camera)
            if seg is None:
                continue
            segments.append(seg)
            sides.append(side)
            placed += 1
        if placed < count:
            raise RuntimeError(f"Could not place {count} {side.value} segments")
    return MinimalInstance(variant=variant, segments=segments, sides=sides, true_model=model)
