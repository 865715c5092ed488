"""Independent numeric solver used to certify the minimal solvers.

Grid search over the plausibility box followed by Levenberg-Marquardt
refinement of the cleared-denominator residuals. Slow, but shares nothing
with the algebraic elimination beyond the constraint polynomials.
"""
import logging
from typing import Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import least_squares

from ackermann_rs.models import PlausibilityBounds, RsModel, SegmentRs

from .constraints import PlaneSide, SegmentConstraint, build_constraint
from .four_line import row_scale

logger = logging.getLogger(__name__)


class OracleGrid(BaseModel):
    """Search box and resolution of the oracle's coarse grid."""

    alpha_range: Tuple[float, float] = Field((-4e-5, 4e-5), description="alpha_row interval")
    beta_range: Tuple[float, float] = Field((-1e-3, 1e-3), description="beta_row interval")
    delta_range: Tuple[float, float] = Field((-0.5, 0.5), description="delta interval")
    lambda_range: Tuple[float, float] = Field((0.0, 2.0), description="lambda interval")
    steps: int = Field(9, ge=2, description="Grid points per axis")
    n_starts: int = Field(20, ge=1, description="Grid points refined locally")

    @classmethod
    def from_bounds(cls, bounds: PlausibilityBounds, steps: int = 9) -> "OracleGrid":
        return cls(
            alpha_range=(-bounds.alpha_max, bounds.alpha_max),
            beta_range=(-bounds.beta_max, bounds.beta_max),
            delta_range=(bounds.delta_min, bounds.delta_max),
            steps=steps,
        )

    model_config = ConfigDict(frozen=True)


def _residuals(constraints: Sequence[SegmentConstraint], params: np.ndarray) -> np.ndarray:
    """Constraint values; ``params`` may carry trailing grid axes."""
    alpha, beta, delta, lam = params
    out = []
    for con in constraints:
        a0 = P.polyval(alpha, con.a0)
        lin = beta * P.polyval(alpha, con.b) + beta * delta * P.polyval(alpha, con.c)
        out.append(a0 + lin if con.side is PlaneSide.LEFT else a0 - lam * lin)
    return np.array(out)


def oracle_cost(segments: Sequence[Tuple[SegmentRs, PlaneSide]], model: RsModel) -> float:
    """Sum of squared constraint values of ``model``."""
    constraints = [build_constraint(seg, side) for seg, side in segments]
    res = _residuals(constraints, np.array(model.as_tuple()))
    return float(np.sum(res**2))


def oracle_solve(
    segments: Sequence[Tuple[SegmentRs, PlaneSide]],
    init_grid: OracleGrid = OracleGrid(),
) -> RsModel:
    """Best local minimum of the summed squared constraints.

    Args:
        segments: (segment, wall) pairs, at least four
        init_grid: Search box and resolution

    Returns:
        Model with the lowest cost found
    """
    if len(segments) < 4:
        raise ValueError(f"Oracle needs at least 4 constraints, got {len(segments)}")
    constraints = [build_constraint(seg, side) for seg, side in segments]
    h = row_scale([seg for seg, _ in segments])
    # alpha and beta are optimised in row-scaled units
    scale = np.array([1.0 / h, 1.0 / h, 1.0, 1.0])

    axes = [
        np.linspace(lo, hi, init_grid.steps)
        for lo, hi in (
            init_grid.alpha_range,
            init_grid.beta_range,
            init_grid.delta_range,
            init_grid.lambda_range,
        )
    ]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij")).reshape(4, -1)
    costs = np.sum(_residuals(constraints, mesh) ** 2, axis=0)
    # lexicographic tie-break on the parameters keeps the start set fixed
    order = np.lexsort((mesh[3], mesh[2], mesh[1], mesh[0], costs))
    starts = mesh[:, order[: init_grid.n_starts]].T

    def fun(z: np.ndarray) -> np.ndarray:
        return _residuals(constraints, z * scale)

    best_params, best_cost = starts[0], float(costs[order[0]])
    for start in starts:
        fit = least_squares(fun, start / scale, method="lm")
        params = fit.x * scale
        cost = float(np.sum(fun(fit.x) ** 2))
        if cost < best_cost:
            best_params, best_cost = params, cost
    logger.debug(f"Oracle cost {best_cost:.3e} at {best_params}")
    alpha, beta, delta, lam = (float(v) for v in best_params)
    return RsModel.from_parameters(alpha, beta, delta, lam)
