"""Tests for pruning and the RANSAC loop."""
import numpy as np
import pytest

from ackermann_rs.exceptions import EstimationFailedError, InsufficientDataError
from ackermann_rs.models import (
    CameraModel,
    RansacConfig,
    RsModel,
    SegmentRs,
    SideLabel,
    SolverVariant,
)
from ackermann_rs.robust import (
    adaptive_iterations,
    prune_segments,
    ransac_ackermann,
    refit_side_assignment,
)
from ackermann_rs.simulator import MotionTruth, SceneConfig, make_scene, render_segments


@pytest.fixture
def camera():
    """Default synthetic camera."""
    return CameraModel.from_readout(640, 380, 816.0, 30.0, 0.4)


@pytest.fixture(scope="module")
def scene_cfg():
    """Noise-free scene distorted with the solvers' own model."""
    return SceneConfig(model_order="second_order", outlier_fraction=0.2, pixel_noise_std=0.0)


@pytest.fixture(scope="module")
def rendered(scene_cfg):
    """Segments of a car at 60 km/h turning at 40 deg/s."""
    motion = MotionTruth(angular_velocity=40.0, translational_velocity=60.0)
    return render_segments(make_scene(scene_cfg, seed=7), motion, scene_cfg, seed=7)


class TestAdaptiveIterations:
    """Test the adaptive stopping rule."""

    def test_all_inliers(self):
        """Test one sample suffices when every segment is an inlier."""
        assert adaptive_iterations(1.0, 4, 0.99, 10000) == 1

    def test_no_inliers(self):
        """Test the cap is returned without support."""
        assert adaptive_iterations(0.0, 4, 0.99, 500) == 500

    def test_half_inliers(self):
        """Test the textbook value for w=0.5, k=4, p=0.99."""
        assert adaptive_iterations(0.5, 4, 0.99, 10000) == 72

    def test_cap(self):
        """Test the result never exceeds the cap."""
        assert adaptive_iterations(0.05, 4, 0.999, 100) == 100


class TestPruning:
    """Test segment pruning."""

    def test_drops_short_and_leaning(self, camera):
        """Test short and far-from-vertical segments are removed, order kept."""
        segments = [
            SegmentRs.from_pixels(0, (100.0, 50.0), (102.0, 200.0), camera),
            SegmentRs.from_pixels(1, (300.0, 100.0), (301.0, 120.0), camera),
            SegmentRs.from_pixels(2, (50.0, 100.0), (600.0, 150.0), camera),
            SegmentRs.from_pixels(3, (500.0, 20.0), (495.0, 300.0), camera),
        ]

        kept = prune_segments(segments, RansacConfig())

        assert [s.id for s in kept] == [0, 3]

    def test_empty(self):
        """Test pruning an empty list."""
        assert prune_segments([], RansacConfig()) == []


class TestRansac:
    """Test the RANSAC estimator."""

    def test_recovers_motion(self, rendered, scene_cfg):
        """Test 4-LA RANSAC recovers alpha and beta with outliers present."""
        cam = scene_cfg.camera()
        truth = rendered.true_model

        result = ransac_ackermann(
            rendered.segments, SolverVariant.FOUR_LINE, RansacConfig(rng_seed=3), cam
        )

        assert result.model.alpha == pytest.approx(truth.alpha, rel=1e-3)
        assert result.model.beta == pytest.approx(truth.beta, rel=1e-3)
        assert result.best_inlier_count >= rendered.inlier_count
        assert len(result.labels) == len(rendered.segments)

    def test_outliers_rejected(self, rendered, scene_cfg):
        """Test the tilted lines are labelled outliers."""
        cam = scene_cfg.camera()
        result = ransac_ackermann(
            rendered.segments, SolverVariant.FOUR_LINE, RansacConfig(rng_seed=3), cam
        )

        for truth_label, label in zip(rendered.labels, result.labels):
            if truth_label is not SideLabel.OUTLIER:
                assert label is truth_label

    def test_thread_count_does_not_change_result(self, rendered, scene_cfg):
        """Test one and four workers produce the identical estimate."""
        cam = scene_cfg.camera()
        single = ransac_ackermann(
            rendered.segments, SolverVariant.FOUR_LINE, RansacConfig(rng_seed=11), cam
        )
        threaded = ransac_ackermann(
            rendered.segments,
            SolverVariant.FOUR_LINE,
            RansacConfig(rng_seed=11, n_workers=4),
            cam,
        )

        assert threaded.model == single.model
        assert threaded.inlier_mask == single.inlier_mask
        assert threaded.iterations_run == single.iterations_run

    def test_same_seed_same_result(self, rendered, scene_cfg):
        """Test repeated runs are identical."""
        cam = scene_cfg.camera()
        cfg = RansacConfig(rng_seed=5)

        first = ransac_ackermann(rendered.segments, SolverVariant.FOUR_LINE, cfg, cam)
        second = ransac_ackermann(rendered.segments, SolverVariant.FOUR_LINE, cfg, cam)

        assert first == second

    def test_insufficient_data(self, rendered, scene_cfg):
        """Test fewer segments than the sample size."""
        with pytest.raises(InsufficientDataError):
            ransac_ackermann(
                rendered.segments[:3], SolverVariant.FOUR_LINE, RansacConfig(), scene_cfg.camera()
            )

    def test_estimation_failed(self, rendered, scene_cfg, mocker):
        """Test a solver that never yields candidates ends in EstimationFailedError."""
        mocker.patch("ackermann_rs.robust.ransac.solve_4la", return_value=[])

        with pytest.raises(EstimationFailedError) as exc_info:
            ransac_ackermann(
                rendered.segments,
                SolverVariant.FOUR_LINE,
                RansacConfig(max_iterations=64),
                scene_cfg.camera(),
            )

        diagnostics = exc_info.value.diagnostics
        assert diagnostics["iterations"] == 64
        assert diagnostics["candidates"] == 0
        assert diagnostics["segments"] == len(rendered.segments)

    def test_one_line_variant(self, scene_cfg):
        """Test 1-LA recovers a pure rotation."""
        motion = MotionTruth(angular_velocity=40.0, translational_velocity=0.0)
        rendered = render_segments(make_scene(scene_cfg, seed=2), motion, scene_cfg, seed=2)

        result = ransac_ackermann(
            rendered.segments, SolverVariant.ONE_LINE, RansacConfig(), scene_cfg.camera()
        )

        assert result.model.alpha == pytest.approx(rendered.true_model.alpha, rel=1e-3)
        assert result.model.beta == 0.0


class TestSideAssignment:
    """Test refit_side_assignment."""

    def test_labels_by_delta(self, camera):
        """Test midpoints left of delta go left and the rest right."""
        segments = [
            SegmentRs.from_pixels(0, (100.0, 50.0), (100.0, 200.0), camera),
            SegmentRs.from_pixels(1, (320.0, 50.0), (320.0, 200.0), camera),
            SegmentRs.from_pixels(2, (500.0, 50.0), (500.0, 200.0), camera),
        ]

        labels = refit_side_assignment(RsModel.from_parameters(0.0, 0.0, 0.0, 1.0), segments, camera)

        assert labels == [SideLabel.LEFT, SideLabel.RIGHT, SideLabel.RIGHT]

    def test_residual_threshold(self, camera):
        """Test segments above the threshold are outliers."""
        segments = [SegmentRs.from_pixels(0, (100.0, 50.0), (110.0, 200.0), camera)]

        labels = refit_side_assignment(RsModel(), segments, camera, threshold_px=0.5)

        assert labels == [SideLabel.OUTLIER]

    def test_precomputed_residuals(self, camera):
        """Test supplied residuals are used instead of recomputed ones."""
        segments = [SegmentRs.from_pixels(0, (100.0, 50.0), (110.0, 200.0), camera)]

        labels = refit_side_assignment(
            RsModel(), segments, camera, threshold_px=0.5, residuals=np.array([0.1])
        )

        assert labels == [SideLabel.LEFT]


@pytest.mark.slow
class TestRansacMonteCarlo:
    """Seeded Monte-Carlo runs of 4-LA RANSAC on noisy scenes with leaning outliers."""

    def test_noisy_scenes_with_outliers(self):
        """Test alpha and beta within 10% and 95% of true inliers kept over 50 seeds."""
        cfg = SceneConfig(outlier_fraction=0.3, pixel_noise_std=0.3)
        motion = MotionTruth(angular_velocity=50.0, translational_velocity=100.0)
        cam = cfg.camera()
        recovered = []
        for seed in range(50):
            rendered = render_segments(make_scene(cfg, seed=seed), motion, cfg, seed=seed)
            truth = rendered.true_model

            result = ransac_ackermann(
                rendered.segments, SolverVariant.FOUR_LINE, RansacConfig(rng_seed=seed), cam
            )

            assert result.model.alpha == pytest.approx(truth.alpha, rel=0.1)
            assert result.model.beta == pytest.approx(truth.beta, rel=0.1)
            true_ids = {
                seg.id
                for seg, label in zip(rendered.segments, rendered.labels)
                if label is not SideLabel.OUTLIER
            }
            found = {i for i, inlier in zip(result.segment_ids, result.inlier_mask) if inlier}
            recovered.append(len(found & true_ids) / len(true_ids))

        assert np.mean(recovered) >= 0.95
