"""Robust estimation: pruning and RANSAC."""
from .pruning import prune_segments
from .ransac import AckermannRansac, adaptive_iterations, ransac_ackermann, refit_side_assignment

__all__ = [
    "AckermannRansac",
    "adaptive_iterations",
    "prune_segments",
    "ransac_ackermann",
    "refit_side_assignment",
]
