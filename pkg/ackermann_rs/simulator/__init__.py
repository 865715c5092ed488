"""Ground-truth simulator for the two-wall driving scene."""
from .config import MotionTruth, SceneConfig
from .minimal import MinimalInstance, random_minimal_instance
from .projection import (
    exact_pose_at_row,
    invert_compensation,
    project_gs,
    project_rs_exact,
    project_rs_planar,
    project_rs_second_order,
    solve_rs_row,
    solve_rs_row_planar,
)
from .render import (
    GROUND_PLANE,
    RenderedSegments,
    gs_plane_ids,
    render_gs_image,
    render_rs_image,
    render_segments,
)
from .scene import SceneLine, ScenePlane, make_scene, scene_planes

__all__ = [
    "GROUND_PLANE",
    "MinimalInstance",
    "MotionTruth",
    "RenderedSegments",
    "SceneConfig",
    "SceneLine",
    "ScenePlane",
    "exact_pose_at_row",
    "gs_plane_ids",
    "invert_compensation",
    "make_scene",
    "project_gs",
    "project_rs_exact",
    "project_rs_planar",
    "project_rs_second_order",
    "random_minimal_instance",
    "render_gs_image",
    "render_rs_image",
    "render_segments",
    "scene_planes",
    "solve_rs_row",
    "solve_rs_row_planar",
]
