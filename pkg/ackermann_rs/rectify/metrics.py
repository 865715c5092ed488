"""Evaluation metrics for compensation quality."""
from typing import Optional, Sequence

import numpy as np

from ackermann_rs.geometry import compensate_point
from ackermann_rs.models import CameraModel, NormalizedPoint, RsModel, SegmentRs


def compensate_segment(seg: SegmentRs, model: RsModel, cam: CameraModel) -> SegmentRs:
    """The segment with both endpoints moved to their GS positions."""
    ends = []
    for point, row in ((seg.top_n, seg.rows[0]), (seg.bottom_n, seg.rows[1])):
        p = compensate_point(point, row, model)
        ends.append(cam.denormalize(NormalizedPoint(x=p[0] / p[2], y=p[1] / p[2])))
    return SegmentRs.from_pixels(seg.id, ends[0], ends[1], cam)


def displacement_metric(
    gt_segments_gs: Sequence[SegmentRs],
    compensated_segments: Sequence[SegmentRs],
) -> float:
    """Mean pixel distance between paired endpoints (top to top, bottom to bottom)."""
    if len(gt_segments_gs) != len(compensated_segments):
        raise ValueError(
            f"Segment lists differ in length: {len(gt_segments_gs)} vs {len(compensated_segments)}"
        )
    if not gt_segments_gs:
        return 0.0
    gt = np.array([[s.top, s.bottom] for s in gt_segments_gs], dtype=float)
    est = np.array([[s.top, s.bottom] for s in compensated_segments], dtype=float)
    return float(np.mean(np.linalg.norm(gt - est, axis=-1)))


def mean_abs_intensity_error(
    image: np.ndarray,
    reference: np.ndarray,
    mask: Optional[np.ndarray] = None,
) -> float:
    """Mean |image - reference| over ``mask`` as a fraction of the 0-255 range."""
    diff = np.abs(image.astype(float) - reference.astype(float))
    if mask is not None:
        diff = diff[mask]
    return float(diff.mean() / 255.0) if diff.size else 0.0
