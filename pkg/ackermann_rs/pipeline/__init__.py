"""Pipeline orchestration and run artifacts."""
from .orchestrator import CompensationPipeline, PipelineProgress
from .overlay import draw_overlay
from .storage import RunStorage, load_gray_image

__all__ = [
    "CompensationPipeline",
    "PipelineProgress",
    "RunStorage",
    "draw_overlay",
    "load_gray_image",
]
