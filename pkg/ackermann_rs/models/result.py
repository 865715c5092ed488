"""RANSAC configuration and estimation results."""
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .bounds import PlausibilityBounds
from .motion import RsModel


class SolverVariant(str, Enum):
    """Minimal solver driven by RANSAC."""

    FOUR_LINE = "4la"
    THREE_LINE = "3la"
    ONE_LINE = "1la"

    @property
    def sample_size(self) -> int:
        return {"4la": 4, "3la": 3, "1la": 1}[self.value]


class SideLabel(str, Enum):
    """Scene plane a segment is attributed to."""

    LEFT = "left"
    RIGHT = "right"
    OUTLIER = "outlier"


class RansacConfig(BaseModel):
    """Settings for pruning and the RANSAC loop."""

    inlier_threshold_px: float = Field(0.5, gt=0, description="Inlier threshold in pixels")
    confidence: float = Field(0.99, description="Probability of drawing one all-inlier sample")
    max_iterations: int = Field(10000, gt=0, description="Hard cap on iterations")
    min_segment_len_px: float = Field(35.0, gt=0, description="Shorter segments are pruned")
    prefilter_algebraic: float = Field(
        0.5, gt=0, description="Segments with larger raw algebraic error are pruned"
    )
    bounds: Optional[PlausibilityBounds] = Field(
        None, description="Plausibility box; derived from the camera when omitted"
    )
    rng_seed: int = Field(0, description="Seed of the sampling generator")
    n_workers: int = Field(1, ge=1, description="Threads used to evaluate hypothesis batches")
    batch_size: int = Field(32, ge=1, description="Samples drawn per scoring batch")

    @field_validator("confidence")
    @classmethod
    def validate_confidence(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValueError(f"confidence must lie in (0, 1), got {v}")
        return v

    model_config = ConfigDict(frozen=True)


class EstimateResult(BaseModel):
    """Best model found by RANSAC and its support."""

    model: RsModel = Field(..., description="Winning model")
    variant: SolverVariant = Field(..., description="Solver used")
    segment_ids: List[int] = Field(default_factory=list, description="Ids of scored segments")
    inlier_mask: List[bool] = Field(default_factory=list, description="Per-segment inlier flag")
    residuals: List[float] = Field(default_factory=list, description="Per-segment residual, px")
    labels: List[SideLabel] = Field(default_factory=list, description="Per-segment plane label")
    iterations_run: int = Field(0, ge=0, description="Samples drawn")
    best_inlier_count: int = Field(0, ge=0, description="Inliers of the winning model")
    residual_sum: float = Field(0.0, ge=0, description="Sum of inlier residuals, px")

    @model_validator(mode="after")
    def validate_lengths(self) -> "EstimateResult":
        n = len(self.segment_ids)
        if not (len(self.inlier_mask) == len(self.residuals) == len(self.labels) == n):
            raise ValueError("Per-segment arrays must have equal length")
        if sum(self.inlier_mask) != self.best_inlier_count:
            raise ValueError("best_inlier_count must equal the number of inliers")
        return self

    @property
    def inlier_ratio(self) -> float:
        if not self.segment_ids:
            return 0.0
        return self.best_inlier_count / len(self.segment_ids)

    model_config = ConfigDict(frozen=True)
