"""Image rectification and evaluation metrics."""
from .boundaries import plane_boundaries
from .forward_map import ForwardMap, build_forward_map
from .metrics import compensate_segment, displacement_metric, mean_abs_intensity_error
from .warp import warp_image

__all__ = [
    "ForwardMap",
    "build_forward_map",
    "compensate_segment",
    "displacement_metric",
    "mean_abs_intensity_error",
    "plane_boundaries",
    "warp_image",
]
