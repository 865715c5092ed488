"""Orchestrates the compensation pipeline: prune, estimate, rectify."""
import logging
import time
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ackermann_rs.exceptions import AckermannRsError, InsufficientDataError
from ackermann_rs.models import (
    CameraModel,
    EstimateResult,
    RansacConfig,
    RsModel,
    SegmentRs,
    SolverVariant,
)
from ackermann_rs.rectify import ForwardMap, build_forward_map, plane_boundaries, warp_image
from ackermann_rs.robust import prune_segments, ransac_ackermann

from .overlay import draw_overlay

logger = logging.getLogger(__name__)


class PipelineProgress:
    """Tracks pipeline progress."""

    STAGES = ("prune", "estimate", "rectify")

    def __init__(self):
        self.current_stage: Optional[str] = None
        self.completed_stages: List[str] = []
        self.segments_in = 0
        self.segments_kept = 0
        self.errors: List[Dict[str, Any]] = []

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "current_stage": self.current_stage,
            "completed_stages": list(self.completed_stages),
            "segments_in": self.segments_in,
            "segments_kept": self.segments_kept,
            "errors": self.errors,
            "progress_percent": self._calculate_progress(),
        }

    def _calculate_progress(self) -> float:
        """Share of stages completed, in percent."""
        return len(self.completed_stages) / len(self.STAGES) * 100


class CompensationPipeline:
    """Estimate rolling-shutter motion from segments and undo it on images."""

    def __init__(
        self,
        camera: CameraModel,
        ransac_config: Optional[RansacConfig] = None,
        variant: SolverVariant = SolverVariant.FOUR_LINE,
        progress_callback: Optional[Callable[[PipelineProgress], None]] = None,
    ):
        """Initialize pipeline.

        Args:
            camera: Camera of the segments and images
            ransac_config: Pruning and RANSAC settings
            variant: Minimal solver to run
            progress_callback: Optional callback for progress updates
        """
        self.camera = camera
        self.ransac_config = ransac_config or RansacConfig()
        self.variant = SolverVariant(variant)
        self.progress_callback = progress_callback
        self.progress = PipelineProgress()
        self.timings: Dict[str, float] = {}

    def prune(self, segments: Sequence[SegmentRs]) -> List[SegmentRs]:
        """Drop short and strongly leaning segments."""
        with self._stage("prune"):
            self.progress.segments_in = len(segments)
            kept = prune_segments(segments, self.ransac_config)
            self.progress.segments_kept = len(kept)
        return kept

    def estimate(self, segments: Sequence[SegmentRs]) -> EstimateResult:
        """Prune, then run RANSAC with the configured solver.

        Raises:
            InsufficientDataError: Too few segments survive pruning
            EstimationFailedError: RANSAC found no plausible model
        """
        kept = self.prune(segments)
        if len(kept) < self.variant.sample_size:
            raise InsufficientDataError(
                f"{len(kept)} segments left after pruning, "
                f"{self.variant.value} needs {self.variant.sample_size}"
            )
        with self._stage("estimate"):
            result = ransac_ackermann(kept, self.variant, self.ransac_config, self.camera)
        logger.info(
            f"Estimated alpha={result.model.alpha:.4e} beta={result.model.beta:.4e} "
            f"delta={result.model.depth.delta} lambda={result.model.depth.lambda_right}"
        )
        return result

    def rectify(self, image: np.ndarray, model: RsModel) -> Tuple[np.ndarray, ForwardMap]:
        """Warp ``image`` with the forward map of ``model``."""
        with self._stage("rectify"):
            fmap = build_forward_map(model, self.camera)
            warped = warp_image(image, fmap)
        shift = fmap.displacement()
        if np.isfinite(shift).any():
            logger.info(
                f"Rectified: median pixel shift {np.nanmedian(shift):.2f} px, "
                f"max {np.nanmax(shift):.2f} px"
            )
        return warped, fmap

    def boundaries(self, model: RsModel) -> List[np.ndarray]:
        """Wall/ground boundaries, empty when lambda or lambda_ground is unknown."""
        try:
            return list(plane_boundaries(model, self.camera))
        except ValueError as e:
            logger.warning(f"No plane boundaries: {e}")
            return []

    def overlay(
        self,
        image: np.ndarray,
        segments: Sequence[SegmentRs],
        result: EstimateResult,
        model: Optional[RsModel] = None,
    ) -> np.ndarray:
        """Overlay segments coloured by side and the boundaries of ``model``."""
        by_id = {seg.id: seg for seg in segments}
        scored = [by_id[i] for i in result.segment_ids if i in by_id]
        labels = [lab for i, lab in zip(result.segment_ids, result.labels) if i in by_id]
        return draw_overlay(image, scored, labels, self.boundaries(model or result.model))

    def process(
        self,
        segments: Sequence[SegmentRs],
        image: Optional[np.ndarray] = None,
        lambda_ground: Optional[float] = None,
    ) -> Dict[str, Any]:
        """Run the full pipeline and summarise it.

        Args:
            segments: Detected segments
            image: Optional RS image to rectify
            lambda_ground: Inverse camera height in gauge units, needed for the
                ground branch of the rectification

        Returns:
            Summary with ``success`` and, on success, the estimate and images
        """
        start = time.perf_counter()
        try:
            result = self.estimate(segments)
            summary: Dict[str, Any] = {"success": True, "result": result}
            if image is not None:
                model = result.model
                if lambda_ground is not None:
                    model = model.with_ground(lambda_ground)
                warped, _ = self.rectify(image, model)
                summary["rectified"] = warped
                summary["overlay"] = self.overlay(image, segments, result, model)
            summary["timings"] = dict(self.timings)
            summary["duration_seconds"] = time.perf_counter() - start
            return summary
        except AckermannRsError as e:
            logger.error(f"Pipeline failed: {e}")
            self.progress.errors.append(
                {"type": type(e).__name__, "stage": self.progress.current_stage, "error": str(e)}
            )
            return {
                "success": False,
                "error": str(e),
                "error_type": type(e).__name__,
                "progress": self.progress.to_dict(),
            }

    def _stage(self, name: str) -> "_StageTimer":
        return _StageTimer(self, name)

    def _update_progress(self):
        """Update progress and call callback if set."""
        if self.progress_callback:
            self.progress_callback(self.progress)


class _StageTimer:
    """Context manager marking a stage current and timing it."""

    def __init__(self, pipeline: CompensationPipeline, name: str):
        self.pipeline = pipeline
        self.name = name
        self.start = 0.0

    def __enter__(self):
        self.pipeline.progress.current_stage = self.name
        self.pipeline._update_progress()
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.pipeline.timings[self.name] = time.perf_counter() - self.start
        if exc_type is None:
            self.pipeline.progress.completed_stages.append(self.name)
            self.pipeline.progress.current_stage = None
            self.pipeline._update_progress()
        return False
