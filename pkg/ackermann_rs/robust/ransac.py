"""RANSAC around the Ackermann minimal solvers."""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ackermann_rs.exceptions import (
    AckermannRsError,
    DegenerateSampleError,
    EstimationFailedError,
    InsufficientDataError,
)
from ackermann_rs.geometry import SegmentArrays
from ackermann_rs.models import (
    CameraModel,
    EstimateResult,
    PlausibilityBounds,
    RansacConfig,
    RsModel,
    SegmentRs,
    SideLabel,
    SolverVariant,
)
from ackermann_rs.solvers import (
    PlaneSide,
    SolverCandidate,
    one_line_candidates,
    solve_3la,
    solve_4la,
)

logger = logging.getLogger(__name__)


def adaptive_iterations(
    inlier_ratio: float,
    sample_size: int,
    confidence: float,
    cap: int,
) -> int:
    """Samples needed to draw one all-inlier sample with ``confidence``."""
    if inlier_ratio <= 0.0:
        return cap
    p_good = inlier_ratio**sample_size
    if p_good >= 1.0:
        return 1
    denom = math.log1p(-p_good)
    if denom == 0.0:
        return cap
    return max(1, min(cap, math.ceil(math.log(1.0 - confidence) / denom)))


@dataclass
class _Hypothesis:
    iteration: int
    model: RsModel
    inliers: int
    residual_sum: float

    def key(self) -> Tuple[int, float, int]:
        # larger is better
        return (self.inliers, -self.residual_sum, -self.iteration)


@dataclass
class _SampleOutcome:
    iteration: int
    best: Optional[_Hypothesis] = None
    candidates: int = 0
    rejected: bool = False
    degenerate: bool = False
    errors: List[str] = field(default_factory=list)


class AckermannRansac:
    """Sampling, solving and scoring state of one RANSAC run."""

    def __init__(
        self,
        segments: Sequence[SegmentRs],
        variant: SolverVariant,
        cfg: RansacConfig,
        camera: CameraModel,
    ):
        """Prepare a run.

        Args:
            segments: Pruned segments to estimate from
            variant: Minimal solver to drive
            cfg: RANSAC settings
            camera: Camera of the segments (focal length scales residuals)
        """
        self.segments = list(segments)
        self.variant = SolverVariant(variant)
        self.cfg = cfg
        self.camera = camera
        self.bounds = cfg.bounds or PlausibilityBounds.from_physical(camera)
        self.arrays = SegmentArrays.from_segments(self.segments)
        self.midpoints = self.arrays.midpoint_x

    def score(self, model: RsModel) -> Tuple[np.ndarray, np.ndarray]:
        """Per-segment residuals (px) and inlier mask."""
        res = self.arrays.residuals_px(model, self.camera.focal_px)
        return res, res <= self.cfg.inlier_threshold_px

    def _candidates(self, sample: np.ndarray) -> Tuple[List[SolverCandidate], bool]:
        """Solver candidates for one sample and whether the sample was rejected."""
        order = sample[np.argsort(self.midpoints[sample], kind="stable")]
        mids = self.midpoints[order]
        segs = [self.segments[i] for i in order]
        if self.variant is SolverVariant.ONE_LINE:
            return one_line_candidates(segs[0], self.bounds), False
        if self.variant is SolverVariant.FOUR_LINE:
            if not mids[2] < mids[3]:
                return [], True
            return solve_4la(segs[:3], segs[3], self.bounds), False
        if not mids[0] < mids[1] < mids[2]:
            return [], True
        out = []
        for pair, other, side in (
            (segs[:2], segs[2], PlaneSide.LEFT),
            (segs[1:], segs[0], PlaneSide.RIGHT),
        ):
            try:
                out.extend(solve_3la(pair, other, side, self.bounds))
            except DegenerateSampleError as e:
                logger.debug(f"3-LA {side.value} pair degenerate: {e}")
        return out, False

    def evaluate(self, job: Tuple[int, np.ndarray]) -> _SampleOutcome:
        """Solve one sample and keep its best-scoring candidate."""
        iteration, sample = job
        outcome = _SampleOutcome(iteration=iteration)
        try:
            candidates, outcome.rejected = self._candidates(sample)
        except DegenerateSampleError:
            outcome.degenerate = True
            return outcome
        except AckermannRsError as e:
            outcome.errors.append(str(e))
            return outcome
        outcome.candidates = len(candidates)
        for cand in candidates:
            res, mask = self.score(cand.model)
            hyp = _Hypothesis(
                iteration=iteration,
                model=cand.model,
                inliers=int(mask.sum()),
                residual_sum=float(res[mask].sum()),
            )
            if outcome.best is None or hyp.key() > outcome.best.key():
                outcome.best = hyp
        return outcome

    def run(self) -> EstimateResult:
        """Run the sampling loop and re-score the winner on all segments.

        Raises:
            InsufficientDataError: Fewer segments than the sample size
            EstimationFailedError: No sample produced a plausible candidate
        """
        n = len(self.segments)
        k = self.variant.sample_size
        if n < k:
            raise InsufficientDataError(
                f"{self.variant.value} needs at least {k} segments, got {n}"
            )
        rng = np.random.default_rng(self.cfg.rng_seed)
        needed = self.cfg.max_iterations
        done = 0
        best: Optional[_Hypothesis] = None
        diagnostics: Dict[str, Any] = {
            "segments": n,
            "rejected_samples": 0,
            "degenerate_samples": 0,
            "candidates": 0,
            "solver_errors": 0,
        }

        executor = ThreadPoolExecutor(self.cfg.n_workers) if self.cfg.n_workers > 1 else None
        try:
            while done < needed:
                size = min(self.cfg.batch_size, needed - done)
                jobs = [
                    (done + j, rng.choice(n, size=k, replace=False)) for j in range(size)
                ]
                done += size
                if executor is None:
                    outcomes = [self.evaluate(job) for job in jobs]
                else:
                    outcomes = list(executor.map(self.evaluate, jobs))
                for outcome in outcomes:
                    diagnostics["rejected_samples"] += int(outcome.rejected)
                    diagnostics["degenerate_samples"] += int(outcome.degenerate)
                    diagnostics["candidates"] += outcome.candidates
                    diagnostics["solver_errors"] += len(outcome.errors)
                    if outcome.best is not None and (
                        best is None or outcome.best.key() > best.key()
                    ):
                        best = outcome.best
                if best is not None:
                    needed = adaptive_iterations(
                        best.inliers / n, k, self.cfg.confidence, self.cfg.max_iterations
                    )
                    logger.debug(
                        f"After {done} samples: {best.inliers}/{n} inliers, "
                        f"need {needed} samples"
                    )
        finally:
            if executor is not None:
                executor.shutdown()

        diagnostics["iterations"] = done
        if best is None:
            raise EstimationFailedError(
                f"No plausible {self.variant.value} hypothesis in {done} samples",
                diagnostics,
            )

        residuals, mask = self.score(best.model)
        labels = refit_side_assignment(
            best.model, self.segments, self.camera, self.cfg.inlier_threshold_px, residuals
        )
        logger.info(
            f"RANSAC {self.variant.value}: {int(mask.sum())}/{n} inliers "
            f"after {done} samples"
        )
        return EstimateResult(
            model=best.model,
            variant=self.variant,
            segment_ids=[s.id for s in self.segments],
            inlier_mask=[bool(v) for v in mask],
            residuals=[float(v) for v in residuals],
            labels=labels,
            iterations_run=done,
            best_inlier_count=int(mask.sum()),
            residual_sum=float(residuals[mask].sum()),
        )


def ransac_ackermann(
    segments: Sequence[SegmentRs],
    variant: SolverVariant,
    cfg: RansacConfig,
    camera: CameraModel,
) -> EstimateResult:
    """Estimate the rolling-shutter model from segments with RANSAC.

    The result is a pure function of (segments, variant, cfg, camera): the
    sample sequence comes from ``cfg.rng_seed`` alone and batches are
    reduced in iteration order whatever ``cfg.n_workers`` is.
    """
    return AckermannRansac(segments, variant, cfg, camera).run()


def refit_side_assignment(
    model: RsModel,
    segments: Sequence[SegmentRs],
    camera: CameraModel,
    threshold_px: float = 0.5,
    residuals: Optional[np.ndarray] = None,
) -> List[SideLabel]:
    """Label each segment left, right or outlier under ``model``.

    Midpoints exactly at delta go right. An unobservable delta counts as 0.
    """
    arrays = SegmentArrays.from_segments(segments)
    if residuals is None:
        residuals = arrays.residuals_px(model, camera.focal_px)
    labels = []
    for mid, res in zip(arrays.midpoint_x, residuals):
        if not res <= threshold_px:
            labels.append(SideLabel.OUTLIER)
        elif mid < model.delta:
            labels.append(SideLabel.LEFT)
        else:
            labels.append(SideLabel.RIGHT)
    return labels
