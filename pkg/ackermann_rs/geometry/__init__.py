"""Ackermann motion model: poses, compensation and residuals."""
from .compensation import (
    SegmentArrays,
    compensate_point,
    compensated_x,
    inverse_depth,
    vertical_residual_algebraic,
    vertical_residual_px,
)
from .pose import PoseRT, exact_pose, second_order_pose

__all__ = [
    "PoseRT",
    "SegmentArrays",
    "compensate_point",
    "compensated_x",
    "exact_pose",
    "inverse_depth",
    "second_order_pose",
    "vertical_residual_algebraic",
    "vertical_residual_px",
]
