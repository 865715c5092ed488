"""Colour overlay of classified segments and wall/ground boundaries."""
import logging
from typing import Optional, Sequence

import cv2
import numpy as np

from ackermann_rs.models import SegmentRs, SideLabel

logger = logging.getLogger(__name__)

# BGR
SIDE_COLORS = {
    SideLabel.LEFT: (255, 0, 0),
    SideLabel.RIGHT: (0, 0, 255),
    SideLabel.OUTLIER: (128, 128, 128),
}
BOUNDARY_COLOR = (0, 255, 0)


def draw_overlay(
    image: np.ndarray,
    segments: Sequence[SegmentRs],
    labels: Sequence[SideLabel],
    boundaries: Optional[Sequence[np.ndarray]] = None,
) -> np.ndarray:
    """Draw segments coloured by wall and the boundary polylines on a copy of ``image``."""
    canvas = cv2.cvtColor(image, cv2.COLOR_GRAY2BGR) if image.ndim == 2 else image.copy()
    for seg, label in zip(segments, labels):
        p1 = (int(round(seg.top[0])), int(round(seg.top[1])))
        p2 = (int(round(seg.bottom[0])), int(round(seg.bottom[1])))
        cv2.line(canvas, p1, p2, SIDE_COLORS[SideLabel(label)], 2, cv2.LINE_AA)
    for polyline in boundaries or []:
        if len(polyline) < 2:
            logger.warning("Boundary polyline has fewer than 2 points, skipped")
            continue
        pts = np.round(polyline).astype(np.int32).reshape(-1, 1, 2)
        cv2.polylines(canvas, [pts], False, BOUNDARY_COLOR, 2, cv2.LINE_AA)
    return canvas
