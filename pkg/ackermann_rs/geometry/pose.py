"""Ackermann camera poses, exact and second order."""
import math
from dataclasses import dataclass

import numpy as np

from ackermann_rs.exceptions import MotionDomainError


@dataclass(frozen=True)
class PoseRT:
    """Rotation and translation of the camera at one row time."""

    rotation: np.ndarray
    translation: np.ndarray

    def apply(self, point: np.ndarray) -> np.ndarray:
        """Map a world point into this camera: R (P - T)."""
        return self.rotation @ (np.asarray(point, dtype=float) - self.translation)

    def frobenius_gap(self, other: "PoseRT") -> float:
        """Frobenius norm of the stacked [R | T] difference."""
        return float(
            np.sqrt(
                np.sum((self.rotation - other.rotation) ** 2)
                + np.sum((self.translation - other.translation) ** 2)
            )
        )


def _yaw_matrix(cos_t: float, sin_t: float) -> np.ndarray:
    return np.array(
        [
            [cos_t, 0.0, -sin_t],
            [0.0, 1.0, 0.0],
            [sin_t, 0.0, cos_t],
        ]
    )


def exact_pose(theta: float, rho: float) -> PoseRT:
    """Pose after yawing by ``theta`` along a circular arc of chord ``rho``.

    The translation direction bisects the yaw (circular motion).
    """
    half = theta / 2.0
    rotation = _yaw_matrix(math.cos(theta), math.sin(theta))
    translation = rho * np.array([math.sin(half), 0.0, math.cos(half)])
    return PoseRT(rotation=rotation, translation=translation)


def second_order_pose(alpha_row: float, beta_row: float, row: float) -> PoseRT:
    """Second-order pose at ``row`` for per-row rates (alpha, beta).

    Raises:
        MotionDomainError: If |alpha_row * row| >= 1
    """
    at = alpha_row * row
    if abs(at) >= 1.0:
        raise MotionDomainError(f"|alpha*t| = {abs(at)} must be < 1")
    gamma = math.sqrt(1.0 - at * at)
    rotation = np.array(
        [
            [1.0 - 2.0 * at * at, 0.0, -2.0 * at * gamma],
            [0.0, 1.0, 0.0],
            [2.0 * at * gamma, 0.0, 1.0 - 2.0 * at * at],
        ]
    )
    translation = beta_row * row * np.array([at, 0.0, gamma])
    return PoseRT(rotation=rotation, translation=translation)
