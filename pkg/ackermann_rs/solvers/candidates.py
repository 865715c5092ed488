"""Solver outputs and the helpers every minimal solver shares."""
import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional

from ackermann_rs.models import PlausibilityBounds, RsModel, plausibility_filter

logger = logging.getLogger(__name__)

UNOBSERVABLE_BETA = 1e-12
CERTIFY_TOL = 1e-8
EXACT_BUCKET = 1e-10
MAX_CANDIDATES = 3


@dataclass(frozen=True)
class SolverCandidate:
    """One model hypothesis produced by a minimal solver."""

    model: RsModel
    real_roots_count: int
    conditioning: float
    residual: float = 0.0


def candidate_order(candidate: SolverCandidate):
    """Sort key: certified-exact first, then residual, then |alpha|."""
    bucket = 0.0 if candidate.residual <= EXACT_BUCKET else candidate.residual
    return (bucket, abs(candidate.model.alpha), candidate.model.beta)


def keep_plausible(
    candidates: Iterable[SolverCandidate],
    bounds: Optional[PlausibilityBounds],
) -> List[SolverCandidate]:
    """Drop candidates outside ``bounds``; ``None`` keeps everything."""
    candidates = list(candidates)
    if bounds is None:
        return candidates
    kept = [c for c in candidates if plausibility_filter(c.model, bounds)]
    if len(kept) < len(candidates):
        logger.debug(f"Plausibility filter dropped {len(candidates) - len(kept)} candidates")
    return kept
