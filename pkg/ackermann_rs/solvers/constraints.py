"""Per-segment polynomial constraints shared by all minimal solvers.

Substituting the compensation map into the vertical-line condition and
clearing both endpoint denominators gives, for a segment on the left
wall (slope 1, inverse depth delta - x)::

    g(alpha, beta, delta) = A0(alpha) + beta * B(alpha) + beta * delta * C(alpha)

and for a segment on the right wall (inverse depth lambda * (x - delta))::

    g(alpha, beta, delta, lambda) = A0(alpha) - lambda * (beta * B(alpha) + beta * delta * C(alpha))

A0 has degree 2 in alpha, B and C degree 3, so a left constraint has total
degree 5 in (alpha, beta, delta). Counting lambda as a fourth unknown lifts
the right constraint to total degree 6 through the lambda * beta * delta * C
term. Lambda is solved for only once (alpha, beta, delta) are fixed, where
the constraint is linear in it. Coefficient arrays are stored lowest power
first, as ``numpy.polynomial.polynomial`` expects.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from ackermann_rs.models import SegmentRs


class PlaneSide(str, Enum):
    """Vertical wall hypothesised for a segment."""

    LEFT = "left"
    RIGHT = "right"


def _endpoint_polys(x: float, r: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(N0, D, E) for one endpoint as polynomials in alpha."""
    n0 = np.array([x, 2.0 * r])
    d = np.array([1.0, -2.0 * x * r])
    e = np.array([x, r, 2.0 * x * r * r])
    return n0, d, e


@dataclass(frozen=True)
class SegmentConstraint:
    """Cleared-denominator constraint of one segment."""

    a0: np.ndarray
    b: np.ndarray
    c: np.ndarray
    side: PlaneSide
    source: int

    def motion_terms(self, alpha: float, beta: float, delta: float) -> Tuple[float, float]:
        """(A0(alpha), beta*B(alpha) + beta*delta*C(alpha))."""
        a0 = P.polyval(alpha, self.a0)
        lin = beta * P.polyval(alpha, self.b) + beta * delta * P.polyval(alpha, self.c)
        return float(a0), float(lin)

    def evaluate(
        self,
        alpha: float,
        beta: float,
        delta: float,
        lam: float = 1.0,
    ) -> float:
        """Value of the constraint polynomial at a parameter point."""
        a0, lin = self.motion_terms(alpha, beta, delta)
        if self.side is PlaneSide.LEFT:
            return a0 + lin
        return a0 - lam * lin

    def lambda_coefficients(self, alpha: float, beta: float, delta: float) -> np.ndarray:
        """Coefficients (q0, q1, q2) of the constraint as a polynomial in lambda."""
        a0, lin = self.motion_terms(alpha, beta, delta)
        if self.side is PlaneSide.LEFT:
            return np.array([a0 + lin, 0.0, 0.0])
        return np.array([a0, -lin, 0.0])

    def scaled(self, row_scale: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Coefficients in the scaled unknowns (alpha*H, beta*H, beta*delta*H).

        Solving in scaled unknowns keeps polynomial coefficients of
        comparable magnitude when rows are in the hundreds.
        """
        powers = row_scale ** -np.arange(4, dtype=float)
        a0 = self.a0 * powers[: self.a0.size]
        b = self.b * powers[: self.b.size] / row_scale
        c = self.c * powers[: self.c.size] / row_scale
        return a0, b, c

    @property
    def coeffs(self) -> Dict[Tuple[int, int, int, int], float]:
        """Monomial map keyed by exponents of (alpha, beta, delta, lambda)."""
        lam_exp = 0 if self.side is PlaneSide.LEFT else 1
        sign = 1.0 if self.side is PlaneSide.LEFT else -1.0
        out: Dict[Tuple[int, int, int, int], float] = {}
        for i, v in enumerate(self.a0):
            if v != 0.0:
                out[(i, 0, 0, 0)] = float(v)
        for i, v in enumerate(self.b):
            if v != 0.0:
                out[(i, 1, 0, lam_exp)] = sign * float(v)
        for i, v in enumerate(self.c):
            if v != 0.0:
                out[(i, 1, 1, lam_exp)] = sign * float(v)
        return out

    @property
    def total_degree(self) -> int:
        """Total degree over (alpha, beta, delta, lambda): 5 on the left wall, 6 on the right."""
        return max(sum(k) for k in self.coeffs) if self.coeffs else 0


def build_constraint(seg: SegmentRs, side: PlaneSide) -> SegmentConstraint:
    """Polynomial vertical-line constraint of ``seg`` hypothesised on ``side``.

    Args:
        seg: Segment with normalized endpoints
        side: Wall the segment is assumed to lie on

    Returns:
        Constraint with A0, B, C coefficient arrays in alpha
    """
    xu, ru = seg.top_n.x, seg.rows[0]
    xv, rv = seg.bottom_n.x, seg.rows[1]
    n0_u, d_u, e_u = _endpoint_polys(xu, ru)
    n0_v, d_v, e_v = _endpoint_polys(xv, rv)

    a0 = P.polysub(P.polymul(n0_v, d_u), P.polymul(n0_u, d_v))
    eu_dv = P.polymul(e_u, d_v)
    ev_du = P.polymul(e_v, d_u)
    b = P.polysub(rv * xv * ev_du, ru * xu * eu_dv)
    c = P.polysub(ru * eu_dv, rv * ev_du)
    return SegmentConstraint(
        a0=_pad(a0, 3),
        b=_pad(b, 4),
        c=_pad(c, 4),
        side=side,
        source=seg.id,
    )


def _pad(coeffs: np.ndarray, size: int) -> np.ndarray:
    out = np.zeros(size)
    out[: min(size, coeffs.size)] = coeffs[:size]
    return out
