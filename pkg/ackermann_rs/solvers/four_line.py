"""General Ackermann solver from three left-wall and one right-wall segment.

The three left constraints are linear in (beta, beta*delta) once alpha is
fixed, so alpha must make the 3x3 coefficient matrix [A0 B C] singular.
Its determinant is a univariate polynomial in alpha whose real roots are
found from the companion matrix; (beta, beta*delta) then follow from the
null space, and lambda from the right segment.
"""
import logging
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from ackermann_rs.exceptions import (
    DegenerateSampleError,
    NoSolutionError,
    SideMismatchError,
)
from ackermann_rs.geometry.compensation import SINGULAR_TOL
from ackermann_rs.models import PlausibilityBounds, RsModel, SegmentRs

from .candidates import (
    CERTIFY_TOL,
    MAX_CANDIDATES,
    UNOBSERVABLE_BETA,
    SolverCandidate,
    candidate_order,
    keep_plausible,
)
from .constraints import PlaneSide, build_constraint
from .roots import MERGE_TOL, real_roots_by_magnitude, trim_leading

logger = logging.getLogger(__name__)

DEGENERATE_TOL = 1e-10


class LambdaSolution(NamedTuple):
    """Right-wall slope and whether the constraint left it undetermined."""

    value: float
    degenerate: bool


def row_scale(segments: Sequence[SegmentRs]) -> float:
    """Largest endpoint row of a sample, at least 1."""
    return max([1.0] + [abs(s.rows[1]) for s in segments] + [abs(s.rows[0]) for s in segments])


def solve_lambda(partial: Tuple[float, float, float], right: SegmentRs) -> LambdaSolution:
    """Solve the right-wall constraint for lambda given (alpha, beta, delta).

    The constraint is at most quadratic in lambda; the real root of least
    absolute value is returned.

    Raises:
        SideMismatchError: If both endpoints lie left of delta
        NoSolutionError: If no real lambda satisfies the constraint
    """
    alpha, beta, delta = partial
    if right.top_n.x < delta and right.bottom_n.x < delta:
        raise SideMismatchError(f"Segment {right.id} lies left of delta={delta:.4g}")
    coeffs = build_constraint(right, PlaneSide.RIGHT).lambda_coefficients(alpha, beta, delta)
    scale = np.max(np.abs(coeffs))
    if scale == 0.0:
        return LambdaSolution(0.0, True)
    if np.all(np.abs(coeffs[1:]) <= DEGENERATE_TOL * scale):
        raise NoSolutionError(f"Segment {right.id}: constraint does not involve lambda")
    roots = real_roots_by_magnitude(coeffs)
    if not roots:
        raise NoSolutionError(f"Segment {right.id}: no real lambda")
    return LambdaSolution(roots[0], False)


def _determinant_poly(rows: List[Tuple[np.ndarray, np.ndarray, np.ndarray]]) -> np.ndarray:
    (a1, b1, c1), (a2, b2, c2), (a3, b3, c3) = rows
    minor_a = P.polysub(P.polymul(b2, c3), P.polymul(b3, c2))
    minor_b = P.polysub(P.polymul(a2, c3), P.polymul(a3, c2))
    minor_c = P.polysub(P.polymul(a2, b3), P.polymul(a3, b2))
    return P.polyadd(
        P.polysub(P.polymul(a1, minor_a), P.polymul(b1, minor_b)),
        P.polymul(c1, minor_c),
    )


class _LeftSystem:
    """Matrix [A0 B C] as a coefficient tensor in alpha, evaluated for all roots at once."""

    def __init__(self, rows: List[Tuple[np.ndarray, np.ndarray, np.ndarray]]):
        width = max(p.size for row in rows for p in row)
        self.coef = np.zeros((3, 3, width))
        for i, row in enumerate(rows):
            for j, p in enumerate(row):
                self.coef[i, j, : p.size] = p
        self.dcoef = P.polyder(self.coef, axis=2)
        self.abs_coef = np.abs(self.coef)

    @staticmethod
    def _evaluate(coef: np.ndarray, a: np.ndarray) -> np.ndarray:
        powers = np.asarray(a, dtype=float)[:, None] ** np.arange(coef.shape[2])
        return np.einsum("ijd,kd->kij", coef, powers)

    def matrices(self, a: np.ndarray) -> np.ndarray:
        """(K, 3, 3) matrices at the K values of ``a``."""
        return self._evaluate(self.coef, a)

    def derivatives(self, a: np.ndarray) -> np.ndarray:
        return self._evaluate(self.dcoef, a)

    def magnitudes(self, a: np.ndarray) -> np.ndarray:
        """Entry-wise bound sum |c_d| |a|^d, the scale of each entry."""
        return self._evaluate(self.abs_coef, np.abs(a))

    def relative_residual(self, x: np.ndarray) -> np.ndarray:
        """Largest row residual of [A0 B C](a) [1, b, c] over its scale, per row of ``x``."""
        vec = np.column_stack([np.ones(len(x)), x[:, 1], x[:, 2]])
        values = np.einsum("kij,kj->ki", self.matrices(x[:, 0]), vec)
        scales = np.einsum("kij,kj->ki", self.magnitudes(x[:, 0]), np.abs(vec))
        return np.max(np.abs(values) / (scales + np.finfo(float).tiny), axis=1)

    def newton(self, x: np.ndarray, steps: int = 3) -> np.ndarray:
        """Polish every (a, b, c) row of ``x``, keeping the iterate of least residual."""
        best = x.copy()
        best_res = self.relative_residual(x)
        active = np.ones(len(x), dtype=bool)
        for _ in range(steps):
            m = self.matrices(x[:, 0])
            vec = np.column_stack([np.ones(len(x)), x[:, 1], x[:, 2]])
            f = np.einsum("kij,kj->ki", m, vec)
            jac = np.stack(
                [np.einsum("kij,kj->ki", self.derivatives(x[:, 0]), vec), m[:, :, 1], m[:, :, 2]],
                axis=2,
            )
            active &= np.linalg.det(jac) != 0.0
            if not active.any():
                break
            x = x.copy()
            x[active] -= np.linalg.solve(jac[active], f[active][..., None])[..., 0]
            active &= np.all(np.isfinite(x), axis=1)
            trial = np.where(active[:, None], x, best)
            res = np.where(active, self.relative_residual(trial), np.inf)
            better = res < best_res
            best[better] = x[better]
            best_res = np.where(better, res, best_res)
        return best


def _denominators_nonzero(segs: Sequence[SegmentRs], a_scaled: np.ndarray, h: float) -> np.ndarray:
    """Mask of scaled alphas that keep every endpoint's compensation finite."""
    xs = np.array([[seg.top_n.x, seg.bottom_n.x] for seg in segs]).ravel()
    rows = np.array([seg.rows for seg in segs], dtype=float).ravel()
    alpha = np.asarray(a_scaled, dtype=float)[:, None] / h
    return np.all(np.abs(1.0 - 2.0 * xs * alpha * rows) >= SINGULAR_TOL, axis=1)


def solve_motion_from_left(left: Sequence[SegmentRs]) -> List[SolverCandidate]:
    """Certified (alpha, beta, delta) solutions from three left-wall segments.

    Raises:
        DegenerateSampleError: If the three constraints do not pin alpha down
    """
    if len(left) != 3:
        raise ValueError(f"Expected 3 left segments, got {len(left)}")
    h = row_scale(left)
    constraints = [build_constraint(s, PlaneSide.LEFT) for s in left]
    rows = [c.scaled(h) for c in constraints]

    det = _determinant_poly(rows)
    row_mag = np.prod([max(np.max(np.abs(p)) for p in row) for row in rows])
    if row_mag == 0.0 or np.max(np.abs(det)) <= DEGENERATE_TOL * row_mag:
        raise DegenerateSampleError("Left constraints are rank deficient for every alpha")
    det = trim_leading(det)
    roots = np.array(real_roots_by_magnitude(det), dtype=float)
    n_real = len(roots)
    logger.debug(f"4-LA determinant degree {det.size - 1}, {n_real} real roots")
    roots = roots[_denominators_nonzero(left, roots, h)] if roots.size else roots
    if roots.size == 0:
        return []

    system = _LeftSystem(rows)
    m = system.matrices(roots)
    lhs = m[:, :, 1:]
    bc = np.einsum("kij,kj->ki", np.linalg.pinv(lhs), -m[:, :, 0])
    refined = system.newton(np.column_stack([roots, bc]))
    residuals = system.relative_residual(refined)
    conditioning = np.linalg.cond(lhs)

    candidates: List[SolverCandidate] = []
    seen: List[float] = []
    for (a_p, b_p, c_p), residual, cond in zip(refined, residuals, conditioning):
        if any(abs(a_p - s) <= MERGE_TOL * (1.0 + abs(a_p)) for s in seen):
            continue
        if residual > CERTIFY_TOL:
            logger.debug(f"Root alpha*H={a_p:.3e} failed certification ({residual:.2e})")
            continue
        seen.append(float(a_p))
        beta = float(b_p) / h
        delta = float(c_p / b_p) if abs(beta) >= UNOBSERVABLE_BETA else None
        candidates.append(
            SolverCandidate(
                model=RsModel.from_parameters(float(a_p) / h, beta, delta, None),
                real_roots_count=n_real,
                conditioning=float(cond),
                residual=float(residual),
            )
        )
    candidates.sort(key=candidate_order)
    return candidates


def solve_4la(
    left: Sequence[SegmentRs],
    right: SegmentRs,
    bounds: Optional[PlausibilityBounds] = None,
) -> List[SolverCandidate]:
    """Minimal solver for three left-wall segments and one right-wall segment.

    Args:
        left: Three segments hypothesised on the left wall
        right: One segment hypothesised on the right wall
        bounds: Plausibility box; ``None`` disables filtering

    Returns:
        Up to three candidates, certified and sorted

    Raises:
        DegenerateSampleError: If the left segments are rank deficient
    """
    partial = keep_plausible(solve_motion_from_left(left), bounds)[:MAX_CANDIDATES]
    out: List[SolverCandidate] = []
    for cand in partial:
        model = cand.model
        if model.depth.delta is None:
            out.append(cand)
            continue
        try:
            lam = solve_lambda((model.alpha, model.beta, model.depth.delta), right)
        except (NoSolutionError, SideMismatchError) as e:
            logger.debug(f"Dropping 4-LA candidate: {e}")
            continue
        full = RsModel.from_parameters(
            model.alpha,
            model.beta,
            model.depth.delta,
            None if lam.degenerate else lam.value,
        )
        out.append(
            SolverCandidate(
                model=full,
                real_roots_count=cand.real_roots_count,
                conditioning=cand.conditioning,
                residual=cand.residual,
            )
        )
    return keep_plausible(out, bounds)
