"""Segment pruning ahead of RANSAC."""
import logging
from typing import List, Sequence

from ackermann_rs.models import RansacConfig, SegmentRs

logger = logging.getLogger(__name__)


def prune_segments(segments: Sequence[SegmentRs], cfg: RansacConfig) -> List[SegmentRs]:
    """Drop short segments and segments far from vertical.

    A segment survives when it is at least ``cfg.min_segment_len_px`` long
    and the raw algebraic error |(u x v) . e_y| of its normalized endpoints
    does not exceed ``cfg.prefilter_algebraic``. Order and ids are kept.
    """
    kept = []
    short = leaning = 0
    for seg in segments:
        if seg.length_px < cfg.min_segment_len_px:
            short += 1
        elif seg.algebraic_vertical_error() > cfg.prefilter_algebraic:
            leaning += 1
        else:
            kept.append(seg)
    logger.info(
        f"Pruned {len(segments) - len(kept)} of {len(segments)} segments "
        f"({short} short, {leaning} leaning)"
    )
    return kept
