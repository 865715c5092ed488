"""Tests for poses, compensation and residuals."""
import math

import numpy as np
import pytest

from ackermann_rs.exceptions import MotionDomainError, SingularConfigurationError
from ackermann_rs.geometry import (
    SegmentArrays,
    compensate_point,
    compensated_x,
    exact_pose,
    inverse_depth,
    second_order_pose,
    vertical_residual_algebraic,
    vertical_residual_px,
)
from ackermann_rs.geometry.compensation import _compensate_with_slope
from ackermann_rs.models import CameraModel, NormalizedPoint, RsModel, SegmentRs
from ackermann_rs.simulator import SceneConfig


@pytest.fixture
def camera():
    """Default synthetic camera."""
    return CameraModel.from_readout(640, 380, 816.0, 30.0, 0.4)


@pytest.fixture
def model():
    """A moderate model with both walls observable."""
    return RsModel.from_parameters(1.2e-5, 4e-4, 0.05, 0.7, lambda_ground=2.0)


class TestPoses:
    """Test exact and second-order poses."""

    def test_row_zero_is_identity(self):
        """Test the pose at row 0."""
        pose = second_order_pose(1e-5, 5e-4, 0.0)

        assert np.allclose(pose.rotation, np.eye(3))
        assert np.allclose(pose.translation, 0.0)

    def test_matches_exact_pose_with_arcsine_angle(self):
        """Test second order equals exact with theta = 2 asin(alpha t), rho = beta t."""
        alpha, beta, row = 2e-4, 1e-3, 300.0
        at = alpha * row
        approx = second_order_pose(alpha, beta, row)
        exact = exact_pose(2.0 * math.asin(at), beta * row)

        assert approx.frobenius_gap(exact) < 1e-12

    def test_convergence_rate(self):
        """Test the gap to the exact pose shrinks with the cube of alpha t."""
        beta, row = 1e-3, 100.0

        def gap(alpha):
            at = alpha * row
            return second_order_pose(alpha, beta, row).frobenius_gap(
                exact_pose(2.0 * at, beta * row)
            )

        ratio = gap(1e-4) / gap(5e-5)

        assert 7.0 < ratio < 9.0

    def test_rotation_is_orthonormal(self):
        """Test the second-order rotation is a rotation."""
        rot = second_order_pose(3e-4, 0.0, 500.0).rotation

        assert np.allclose(rot @ rot.T, np.eye(3))
        assert np.linalg.det(rot) == pytest.approx(1.0)

    def test_domain(self):
        """Test |alpha t| >= 1 is rejected."""
        with pytest.raises(MotionDomainError):
            second_order_pose(0.01, 0.0, 100.0)

    def test_apply(self):
        """Test the pose maps world points into the camera."""
        pose = exact_pose(0.0, 2.0)

        assert np.allclose(pose.apply([1.0, 0.0, 5.0]), [1.0, 0.0, 3.0])


class TestInverseDepth:
    """Test piecewise planar inverse depth."""

    def test_walls(self):
        """Test both wall branches and the kink at delta."""
        depth = RsModel.from_parameters(0.0, 1e-4, 0.1, 0.5).depth

        assert inverse_depth(-0.2, depth) == pytest.approx(0.3)
        assert inverse_depth(0.3, depth) == pytest.approx(0.1)
        assert inverse_depth(0.1, depth) == 0.0

    def test_vectorised(self):
        """Test array input."""
        depth = RsModel.from_parameters(0.0, 1e-4, 0.0, 2.0).depth
        out = inverse_depth(np.array([-0.1, 0.0, 0.1]), depth)

        assert np.allclose(out, [0.1, 0.0, 0.2])

    def test_ground_requires_y(self, model):
        """Test the ground branch needs p2."""
        with pytest.raises(ValueError):
            inverse_depth(0.0, model.depth, include_ground=True)

    def test_matches_scene_geometry(self):
        """Test inverse depth in gauge units against points of the default scene."""
        cfg = SceneConfig()
        depth = cfg.depth_model()
        gauge = cfg.gauge_length_m

        left = np.array([-cfg.left_plane_dist_m, 0.3, 10.0])
        right = np.array([cfg.right_plane_dist_m, 0.3, 8.0])
        ground = np.array([0.5, cfg.camera_height_m, 6.0])

        for point in (left, right, ground):
            x, y = point[0] / point[2], point[1] / point[2]
            s_inv = inverse_depth(x, depth, include_ground=True, p2=y)
            assert s_inv == pytest.approx(gauge / point[2])


class TestCompensation:
    """Test the RS to GS point map."""

    def test_zero_motion_identity(self):
        """Test zero motion leaves points in place."""
        p = NormalizedPoint(x=0.2, y=-0.1)

        assert np.allclose(compensate_point(p, 250.0, RsModel()), [0.2, -0.1, 1.0])

    def test_row_zero_identity(self, model):
        """Test the first row is not moved."""
        p = NormalizedPoint(x=-0.3, y=0.15)

        assert np.allclose(compensate_point(p, 0.0, model), [-0.3, 0.15, 1.0])

    def test_third_coordinate_is_one(self, model):
        """Test the compensated point is already dehomogenised."""
        for x in (-0.35, -0.1, 0.2, 0.38):
            out = compensate_point(NormalizedPoint(x=x, y=0.1), 300.0, model)
            assert out[2] == pytest.approx(1.0, abs=1e-12)

    def test_vectorised_matches_scalar(self, model):
        """Test compensated_x against compensate_point."""
        xs = np.array([-0.3, -0.05, 0.12, 0.3])
        rows = np.array([10.0, 120.0, 250.0, 370.0])
        fast = compensated_x(xs, rows, model.alpha, model.beta, inverse_depth(xs, model.depth))
        slow = [compensate_point(NormalizedPoint(x=x, y=0.0), r, model)[0] for x, r in zip(xs, rows)]

        assert np.allclose(fast, slow, rtol=1e-12, atol=1e-15)

    def test_singular(self):
        """Test a vanishing denominator."""
        model = RsModel.from_parameters(0.01, 0.0)

        with pytest.raises(SingularConfigurationError):
            compensate_point(NormalizedPoint(x=0.5, y=0.0), 100.0, model)
        assert np.isinf(compensated_x(0.5, 100.0, 0.01, 0.0, 0.0))

    def test_gauge_invariance(self, model):
        """Test scaling beta by c and all slopes by 1/c changes nothing."""
        c = 3.7
        scaled = RsModel.from_parameters(
            model.alpha, model.beta * c, model.delta, model.lam / c, model.depth.lambda_ground / c
        )
        for x in (-0.3, 0.0, 0.25):
            p = NormalizedPoint(x=x, y=0.1)
            ref = compensate_point(p, 200.0, model)
            out = _compensate_with_slope(p, 200.0, scaled, 1.0 / c)
            assert np.allclose(out, ref, rtol=1e-12, atol=1e-15)


class TestResiduals:
    """Test vertical-line residuals."""

    def test_algebraic_vertical(self):
        """Test a vertical pair has zero algebraic residual."""
        assert vertical_residual_algebraic([0.1, 0.2, 1.0], [0.1, 0.5, 1.0]) == 0.0
        assert vertical_residual_algebraic([0.1, 0.2, 1.0], [0.3, 0.5, 1.0]) == pytest.approx(0.2)

    def test_pixel_residual_of_vertical_segment(self, camera):
        """Test zero residual for a vertical segment under zero motion."""
        seg = SegmentRs.from_pixels(0, (200.0, 40.0), (200.0, 300.0), camera)

        assert vertical_residual_px(seg, RsModel(), camera) == pytest.approx(0.0)

    def test_pixel_residual_of_leaning_segment(self, camera):
        """Test the residual is the horizontal pixel offset."""
        seg = SegmentRs.from_pixels(0, (200.0, 40.0), (206.0, 300.0), camera)

        assert vertical_residual_px(seg, RsModel(), camera) == pytest.approx(6.0)

    def test_arrays_match_scalar(self, camera, model):
        """Test vectorised scoring against the per-segment residual."""
        segments = [
            SegmentRs.from_pixels(0, (100.0, 30.0), (103.0, 250.0), camera),
            SegmentRs.from_pixels(1, (400.0, 60.0), (396.0, 330.0), camera),
            SegmentRs.from_pixels(2, (560.0, 100.0), (561.0, 200.0), camera),
        ]
        arrays = SegmentArrays.from_segments(segments)
        expected = [vertical_residual_px(s, model, camera) for s in segments]

        assert len(arrays) == 3
        assert np.allclose(arrays.residuals_px(model, camera.focal_px), expected, rtol=1e-9)
