"""Closed-form solvers for restricted motions.

Pure translation (alpha = 0) turns the left-wall constraint into a linear
equation in (beta, beta*delta), so two segments on one wall and one on
the other determine the model. Pure rotation (beta = 0) leaves a
quadratic in alpha per segment.
"""
import logging
from typing import List, Optional, Sequence

import numpy as np

from ackermann_rs.exceptions import DegenerateSampleError, NoSolutionError, SideMismatchError
from ackermann_rs.geometry.compensation import SINGULAR_TOL
from ackermann_rs.models import PlausibilityBounds, RsModel, SegmentRs

from .candidates import UNOBSERVABLE_BETA, SolverCandidate, candidate_order, keep_plausible
from .constraints import PlaneSide, SegmentConstraint, build_constraint
from .four_line import row_scale, solve_lambda
from .roots import real_roots_by_magnitude

logger = logging.getLogger(__name__)

SINGULAR_PAIR_TOL = 1e-12


def _translation_terms(constraint: SegmentConstraint):
    """(A0, B, C) of a constraint evaluated at alpha = 0."""
    return constraint.a0[0], constraint.b[0], constraint.c[0]


def _relative_residual(constraints: Sequence[SegmentConstraint], model: RsModel) -> float:
    worst = 0.0
    for con in constraints:
        a0, lin = con.motion_terms(model.alpha, model.beta, model.delta)
        lam = model.lam if con.side is PlaneSide.RIGHT else 1.0
        value = con.evaluate(model.alpha, model.beta, model.delta, lam)
        scale = abs(a0) + abs(lam * lin) + np.finfo(float).tiny
        worst = max(worst, abs(value) / scale)
    return worst


def solve_3la(
    same_plane: Sequence[SegmentRs],
    other: SegmentRs,
    side: PlaneSide = PlaneSide.LEFT,
    bounds: Optional[PlausibilityBounds] = None,
) -> List[SolverCandidate]:
    """Pure-translation solver: two segments on one wall, one on the other.

    Args:
        same_plane: Two segments on the wall named by ``side``
        other: One segment on the opposite wall
        side: Wall of ``same_plane``
        bounds: Plausibility box; ``None`` disables filtering

    Returns:
        At most one candidate

    Raises:
        DegenerateSampleError: If the 2x2 system is singular
    """
    if len(same_plane) != 2:
        raise ValueError(f"Expected 2 same-plane segments, got {len(same_plane)}")
    pair = [build_constraint(s, side) for s in same_plane]
    terms = [_translation_terms(c) for c in pair]
    mat = np.array([[b, c] for _, b, c in terms])
    rhs = -np.array([a0 for a0, _, _ in terms])
    scale = max(np.max(np.abs(mat)), 1.0)
    if abs(np.linalg.det(mat)) <= SINGULAR_PAIR_TOL * scale * scale:
        raise DegenerateSampleError(
            f"Segments {[s.id for s in same_plane]} give a singular translation system"
        )
    p, q = np.linalg.solve(mat, rhs)
    conditioning = float(np.linalg.cond(mat))

    if side is PlaneSide.LEFT:
        model = _left_pair_model(float(p), float(q), other)
    else:
        model = _right_pair_model(float(p), float(q), other)
    if model is None:
        return []

    constraints = pair + [
        build_constraint(other, PlaneSide.RIGHT if side is PlaneSide.LEFT else PlaneSide.LEFT)
    ]
    candidate = SolverCandidate(
        model=model,
        real_roots_count=1,
        conditioning=conditioning,
        residual=_relative_residual(constraints, model),
    )
    return keep_plausible([candidate], bounds)


def _left_pair_model(beta: float, beta_delta: float, right: SegmentRs) -> Optional[RsModel]:
    if abs(beta) < UNOBSERVABLE_BETA:
        return RsModel.from_parameters(0.0, 0.0, None, None)
    delta = beta_delta / beta
    try:
        lam = solve_lambda((0.0, beta, delta), right)
    except (NoSolutionError, SideMismatchError) as e:
        logger.debug(f"3-LA right segment rejected: {e}")
        return None
    return RsModel.from_parameters(0.0, beta, delta, None if lam.degenerate else lam.value)


def _right_pair_model(lam_beta: float, lam_beta_delta: float, left: SegmentRs) -> Optional[RsModel]:
    # the right pair solves for (-lambda*beta, -lambda*beta*delta)
    if abs(lam_beta) < UNOBSERVABLE_BETA:
        logger.debug("3-LA right pair is vertical, lambda*beta vanishes")
        return None
    delta = lam_beta_delta / lam_beta
    a0, b, c = _translation_terms(build_constraint(left, PlaneSide.LEFT))
    denom = b + delta * c
    if denom == 0.0:
        return None
    beta = -a0 / denom
    if abs(beta) < UNOBSERVABLE_BETA:
        return None
    return RsModel.from_parameters(0.0, beta, delta, -lam_beta / beta)


def solve_1la(seg: SegmentRs, bounds: Optional[PlausibilityBounds] = None) -> List[float]:
    """Pure-rotation solver: real alpha roots of one segment, by |alpha|.

    The constraint is quadratic in alpha, so at most two values come back.
    """
    h = row_scale([seg])
    a0, _, _ = build_constraint(seg, PlaneSide.LEFT).scaled(h)
    out = []
    for root in real_roots_by_magnitude(a0):
        alpha = root / h
        if any(
            abs(1.0 - 2.0 * pt.x * alpha * row) < SINGULAR_TOL
            for pt, row in ((seg.top_n, seg.rows[0]), (seg.bottom_n, seg.rows[1]))
        ):
            continue
        if bounds is not None and abs(alpha) > bounds.alpha_max:
            continue
        out.append(alpha)
    return out


def one_line_candidates(
    seg: SegmentRs,
    bounds: Optional[PlausibilityBounds] = None,
) -> List[SolverCandidate]:
    """:func:`solve_1la` wrapped as pure-rotation model candidates."""
    constraint = build_constraint(seg, PlaneSide.LEFT)
    alphas = solve_1la(seg, bounds)
    out = []
    for alpha in alphas:
        model = RsModel.from_parameters(alpha, 0.0, None, None)
        out.append(
            SolverCandidate(
                model=model,
                real_roots_count=len(alphas),
                conditioning=1.0,
                residual=_relative_residual([constraint], model),
            )
        )
    return sorted(keep_plausible(out, bounds), key=candidate_order)
