"""End-to-end tests: CLI commands on simulated data and full-loop accuracy."""
import json

import numpy as np
import pandas as pd
import pytest

from ackermann_rs.extractors import SegmentExtractor
from ackermann_rs.experiments import SweepConfig, run_sweep, summarize_sweep
from ackermann_rs.models import (
    CameraModel,
    PlausibilityBounds,
    RansacConfig,
    SideLabel,
    SolverVariant,
)
from ackermann_rs.pipeline import CompensationPipeline
from ackermann_rs.rectify import (
    build_forward_map,
    compensate_segment,
    displacement_metric,
    mean_abs_intensity_error,
    warp_image,
)
from ackermann_rs.simulator import (
    MotionTruth,
    SceneConfig,
    make_scene,
    random_minimal_instance,
    render_gs_image,
    render_rs_image,
    render_segments,
)
from ackermann_rs.solvers import solve_4la
from rs_cli import (
    EXIT_ERROR,
    EXIT_ESTIMATION,
    EXIT_INSUFFICIENT,
    EXIT_OK,
    EXIT_PARSE,
    run,
)
from tests.fixtures.lsd_samples import CAMERA_JSON, LSD_OUTPUT


@pytest.fixture(scope="module")
def simulated(tmp_path_factory):
    """A noise-free second-order frame written by ``simulate``."""
    out = tmp_path_factory.mktemp("sim")
    code = run([
        "--quiet", "simulate", "--model-order", "second_order", "--noise", "0",
        "--outliers", "0.2", "--seed", "3", "--out", str(out),
    ])
    assert code == EXIT_OK
    return out


@pytest.fixture
def camera_file(tmp_path):
    """Camera document of the default synthetic frame."""
    path = tmp_path / "camera.json"
    path.write_text(CAMERA_JSON)
    return path


class TestSimulateCommand:
    """Test ``simulate``."""

    def test_outputs(self, simulated):
        """Test every artifact is written."""
        for name in (
            "rs.pgm", "gs.pgm", "segments.jsonl", "gs_segments.jsonl",
            "camera.json", "truth.json", "labels.json", "manifest.json",
        ):
            assert (simulated / name).exists(), name

        labels = json.loads((simulated / "labels.json").read_text())
        assert len(labels["segment_ids"]) == len(labels["labels"]) >= 20
        truth = json.loads((simulated / "truth.json").read_text())
        assert truth["model"]["units"]["translational_velocity_kmh"] == pytest.approx(60.0)

    def test_deterministic(self, simulated, tmp_path):
        """Test the same seed reproduces every non-manifest artifact."""
        code = run([
            "--quiet", "simulate", "--model-order", "second_order", "--noise", "0",
            "--outliers", "0.2", "--seed", "3", "--out", str(tmp_path),
        ])

        assert code == EXIT_OK
        for name in ("rs.pgm", "segments.jsonl", "truth.json", "labels.json"):
            assert (tmp_path / name).read_bytes() == (simulated / name).read_bytes(), name

    def test_manifest(self, simulated):
        """Test the manifest records the command and seed."""
        manifest = json.loads((simulated / "manifest.json").read_text())

        assert manifest["command"] == "simulate"
        assert manifest["seed"] == 3
        assert set(manifest["timings"]) == {"segments", "images"}

    def test_invalid_outlier_fraction(self, tmp_path):
        """Test an outlier fraction above 1 exits 2."""
        code = run(["--quiet", "simulate", "--outliers", "2", "--out", str(tmp_path / "out")])

        assert code == EXIT_PARSE

    def test_physical_depth_convention(self, tmp_path):
        """Test the true-depth rendering is selectable from the command line."""
        code = run([
            "--quiet", "simulate", "--depth-convention", "physical", "--noise", "0",
            "--seed", "3", "--out", str(tmp_path),
        ])

        assert code == EXIT_OK
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        assert manifest["config"]["args"]["depth_convention"] == "physical"


class TestEstimateCommand:
    """Test ``estimate``."""

    def test_recovers_velocity(self, simulated, tmp_path):
        """Test noise-free input gives the simulated velocities within 1%."""
        code = run([
            "--quiet", "estimate", str(simulated / "segments.jsonl"),
            "--camera", str(simulated / "camera.json"),
            "--gauge-length", "2.5", "--out", str(tmp_path),
        ])

        assert code == EXIT_OK
        model = json.loads((tmp_path / "model.json").read_text())
        assert model["units"]["translational_velocity_kmh"] == pytest.approx(60.0, rel=0.01)
        assert model["units"]["angular_velocity_deg_s"] == pytest.approx(40.0, rel=0.01)
        estimate = json.loads((tmp_path / "estimate.json").read_text())
        assert estimate["variant"] == "4la"
        assert (tmp_path / "manifest.json").exists()

    def test_corrupt_input(self, tmp_path, camera_file):
        """Test a malformed segments file exits 2 and writes nothing."""
        segments = tmp_path / "bad.jsonl"
        segments.write_text("{not json\n")
        out = tmp_path / "out"

        code = run(["--quiet", "estimate", str(segments), "--camera", str(camera_file),
                    "--out", str(out)])

        assert code == EXIT_PARSE
        assert not out.exists()

    def test_missing_camera(self, tmp_path):
        """Test estimate without camera information exits 2."""
        segments = tmp_path / "s.jsonl"
        segments.write_text("")

        assert run(["--quiet", "estimate", str(segments)]) == EXIT_PARSE

    def test_non_numeric_len(self, tmp_path, camera_file):
        """Test a non-numeric stored segment length exits 2."""
        segments = tmp_path / "bad_len.jsonl"
        segments.write_text(
            '{"id": 0, "x1": 100.0, "y1": 30.0, "x2": 101.5, "y2": 200.0, "len": "abc"}\n'
        )

        code = run(["--quiet", "estimate", str(segments), "--camera", str(camera_file),
                    "--out", str(tmp_path / "out")])

        assert code == EXIT_PARSE

    @pytest.mark.parametrize("flags", [["--workers", "0"], ["--confidence", "2"]])
    def test_invalid_ransac_flags(self, simulated, tmp_path, flags):
        """Test out-of-range RANSAC settings exit 2."""
        code = run([
            "--quiet", "estimate", str(simulated / "segments.jsonl"),
            "--camera", str(simulated / "camera.json"), "--out", str(tmp_path / "out"), *flags,
        ])

        assert code == EXIT_PARSE
        assert not (tmp_path / "out").exists()

    def test_too_few_segments(self, tmp_path, camera_file):
        """Test fewer segments than the sample size exits 3."""
        segments = tmp_path / "few.jsonl"
        segments.write_text(
            '{"id": 0, "x1": 100.0, "y1": 30.0, "x2": 101.5, "y2": 200.0}\n'
            '{"id": 1, "x1": 400.0, "y1": 250.0, "x2": 398.0, "y2": 90.0}\n'
        )

        code = run(["--quiet", "estimate", str(segments), "--camera", str(camera_file),
                    "--out", str(tmp_path / "out")])

        assert code == EXIT_INSUFFICIENT

    def test_estimation_failed(self, simulated, tmp_path, mocker):
        """Test a run without plausible hypotheses exits 4."""
        mocker.patch("ackermann_rs.robust.ransac.solve_4la", return_value=[])

        code = run([
            "--quiet", "estimate", str(simulated / "segments.jsonl"),
            "--camera", str(simulated / "camera.json"),
            "--max-iterations", "64", "--out", str(tmp_path),
        ])

        assert code == EXIT_ESTIMATION

    def test_one_line_on_rotation(self, tmp_path):
        """Test 1-LA on pure-rotation data recovers the yaw rate within 2%."""
        sim = tmp_path / "sim"
        assert run([
            "--quiet", "simulate", "--speed", "0", "--angular", "40", "--noise", "0",
            "--outliers", "0", "--model-order", "second_order", "--out", str(sim),
        ]) == EXIT_OK

        code = run([
            "--quiet", "estimate", str(sim / "segments.jsonl"), "--camera", str(sim / "camera.json"),
            "--variant", "1la", "--gauge-length", "2.5", "--out", str(tmp_path / "est"),
        ])

        assert code == EXIT_OK
        model = json.loads((tmp_path / "est" / "model.json").read_text())
        assert model["units"]["angular_velocity_deg_s"] == pytest.approx(40.0, rel=0.02)


class TestRectifyCommand:
    """Test ``rectify``."""

    @pytest.fixture(scope="class")
    def estimated(self, simulated, tmp_path_factory):
        """Estimate written next to the simulated frame."""
        out = tmp_path_factory.mktemp("est")
        assert run([
            "--quiet", "estimate", str(simulated / "segments.jsonl"),
            "--camera", str(simulated / "camera.json"), "--out", str(out),
        ]) == EXIT_OK
        return out

    def test_outputs(self, simulated, estimated, tmp_path):
        """Test the rectified image, overlay and boundaries are written."""
        code = run([
            "--quiet", "rectify", str(simulated / "rs.pgm"),
            "--model", str(estimated / "model.json"),
            "--camera", str(simulated / "camera.json"),
            "--height", "1.2",
            "--segments", str(simulated / "segments.jsonl"),
            "--estimate", str(estimated / "estimate.json"),
            "--out", str(tmp_path),
        ])

        assert code == EXIT_OK
        assert (tmp_path / "rectified.pgm").exists()
        assert (tmp_path / "overlay.png").exists()
        boundaries = json.loads((tmp_path / "boundaries.json").read_text())
        assert set(boundaries) == {"left", "right"}

    def test_needs_height(self, simulated, estimated, tmp_path):
        """Test a model without ground needs --height."""
        code = run([
            "--quiet", "rectify", str(simulated / "rs.pgm"),
            "--model", str(estimated / "model.json"),
            "--camera", str(simulated / "camera.json"),
            "--out", str(tmp_path / "out"),
        ])

        assert code == EXIT_PARSE

    def test_size_mismatch(self, simulated, estimated, tmp_path):
        """Test an image that does not match the camera."""
        code = run([
            "--quiet", "rectify", str(simulated / "rs.pgm"),
            "--model", str(estimated / "model.json"),
            "--width", "320", "--height-px", "190", "--height", "1.2",
            "--out", str(tmp_path / "out"),
        ])

        assert code == EXIT_PARSE


class TestOtherCommands:
    """Test ``convert-lsd``, ``report``, ``manpage``, the experiments and the bare parser."""

    def test_convert_lsd(self, tmp_path, camera_file):
        """Test lsd output becomes a segments file."""
        lsd = tmp_path / "frame.lsd.txt"
        lsd.write_text(LSD_OUTPUT)

        code = run(["--quiet", "convert-lsd", str(lsd), "--camera", str(camera_file),
                    "--out", str(tmp_path / "out")])

        assert code == EXIT_OK
        camera = CameraModel(focal_px=816.0, principal_point=(320.0, 190.0), width=640, height=380)
        segments = SegmentExtractor(camera).extract_from_file(tmp_path / "out" / "segments.jsonl")
        assert [s.id for s in segments] == [0, 1, 2]

    def test_report(self, tmp_path):
        """Test the SVG is rendered from a CSV."""
        csv = tmp_path / "sweep.csv"
        pd.DataFrame(
            {
                "status": ["ok", "ok"],
                "true_speed_kmh": [60.0, 60.0],
                "true_angular_deg_s": [40.0, 40.0],
                "est_speed_kmh": [58.0, 61.0],
                "est_angular_deg_s": [39.0, 41.5],
            }
        ).to_csv(csv, index=False)

        code = run(["--quiet", "report", str(csv), "--out", str(tmp_path / "out")])

        assert code == EXIT_OK
        assert (tmp_path / "out" / "sweep.svg").read_text().lstrip().startswith("<?xml")

    def test_report_bad_csv(self, tmp_path):
        """Test a CSV without sweep columns exits 2."""
        csv = tmp_path / "other.csv"
        csv.write_text("a,b\n1,2\n")

        assert run(["--quiet", "report", str(csv), "--out", str(tmp_path / "out")]) == EXIT_PARSE

    def test_manpage(self, tmp_path):
        """Test the manual lists commands, exit codes and environment."""
        path = tmp_path / "ackermann-rs.1.txt"

        assert run(["--quiet", "manpage", "--out", str(path)]) == EXIT_OK
        text = path.read_text()
        for needle in ("COMMAND simulate", "COMMAND estimate", "EXIT STATUS", "ACKRS_SEED"):
            assert needle in text

    def test_no_command(self, capsys):
        """Test a bare invocation prints help and exits 1."""
        assert run([]) == EXIT_ERROR
        assert "usage" in capsys.readouterr().out

    def test_sweep_command(self, tmp_path):
        """Test a one-cell sweep writes the CSV, summary and SVG."""
        code = run([
            "--quiet", "sweep", "--speeds", "60", "--angular", "40", "--trials", "1",
            "--out", str(tmp_path),
        ])

        assert code == EXIT_OK
        frame = pd.read_csv(tmp_path / "sweep.csv")
        assert len(frame) == 1
        assert (tmp_path / "sweep_summary.csv").exists()
        assert (tmp_path / "sweep.svg").exists()

    def test_height_error_command(self, tmp_path):
        """Test the camera-height experiment writes its CSV, SVG and manifest."""
        code = run([
            "--quiet", "height-error", "--errors", "0,0.2", "--seed", "2", "--out", str(tmp_path),
        ])

        assert code == EXIT_OK
        frame = pd.read_csv(tmp_path / "height_error.csv")
        assert frame["height_error_m"].tolist() == [0.0, 0.2]
        assert (tmp_path / "height_error.svg").exists()
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        assert manifest["command"] == "height-error"

    def test_height_error_invalid(self, tmp_path):
        """Test a height error that puts the camera underground exits 2."""
        code = run(["--quiet", "height-error", "--errors=-2", "--out", str(tmp_path / "out")])

        assert code == EXIT_PARSE


@pytest.mark.slow
class TestAcceptance:
    """Long-running accuracy checks on simulated data."""

    def test_four_line_completeness(self):
        """Test the true model is among the 4-LA candidates in 99.9% of 10,000 instances."""
        camera = CameraModel.from_readout(640, 380, 816.0, 30.0, 0.4)
        bounds = PlausibilityBounds.from_physical(camera)
        scale = np.array([bounds.alpha_max, bounds.beta_max, 1.0])
        rng = np.random.default_rng(10_000)
        hits = 0
        for _ in range(10_000):
            inst = random_minimal_instance(SolverVariant.FOUR_LINE, camera, bounds, rng)
            truth = np.array(inst.true_model.as_tuple()[:3]) / scale
            for cand in solve_4la(inst.segments[:3], inst.segments[3], bounds):
                found = np.array(cand.model.as_tuple()[:3]) / scale
                if np.linalg.norm(found - truth) <= 1e-6 * np.linalg.norm(truth):
                    hits += 1
                    break
        assert hits >= 9_990

    def test_displacement_reduction(self):
        """Test the estimated model halves the endpoint displacement at 60 km/h, 40 deg/s."""
        cfg = SceneConfig(pixel_noise_std=0.3, outlier_fraction=0.2)
        motion = MotionTruth(angular_velocity=40.0, translational_velocity=60.0)
        rendered = render_segments(make_scene(cfg, seed=21), motion, cfg, seed=21)
        cam = cfg.camera()

        result = CompensationPipeline(cam, RansacConfig(rng_seed=21)).estimate(rendered.segments)

        pairs = [
            (rs, gs)
            for rs, gs, label in zip(rendered.segments, rendered.gs_segments, rendered.labels)
            if label is not SideLabel.OUTLIER
        ]
        gs = [p[1] for p in pairs]
        raw = displacement_metric(gs, [p[0] for p in pairs])
        fixed = displacement_metric(gs, [compensate_segment(p[0], result.model, cam) for p in pairs])
        assert raw > 3.0
        assert fixed <= 0.5 * raw

    def test_rectification_loop(self):
        """Test render, estimate and warp with the estimate recovers the GS image."""
        cfg = SceneConfig(pixel_noise_std=0.3, outlier_fraction=0.2)
        motion = MotionTruth(angular_velocity=40.0, translational_velocity=60.0)
        gs = render_gs_image(cfg)
        rs = render_rs_image(gs, motion, cfg)
        rendered = render_segments(make_scene(cfg, seed=7), motion, cfg, seed=7)
        pipeline = CompensationPipeline(cfg.camera(), RansacConfig(rng_seed=7))

        summary = pipeline.process(
            rendered.segments, image=rs, lambda_ground=cfg.depth_model().lambda_ground
        )

        assert summary["success"]
        estimated = summary["result"].model
        truth = rendered.true_model
        assert estimated.alpha == pytest.approx(truth.alpha, rel=0.1)
        assert estimated.beta == pytest.approx(truth.beta, rel=0.1)
        warped = summary["rectified"]
        valid = warped > 0
        assert valid.mean() > 0.8
        assert mean_abs_intensity_error(warped, gs, valid) < 0.05

    def test_rectification_loop_true_model(self):
        """Test warping a synthesised RS image with the true model recovers the GS image."""
        cfg = SceneConfig()
        motion = MotionTruth(angular_velocity=40.0, translational_velocity=60.0)
        gs = render_gs_image(cfg)
        rs = render_rs_image(gs, motion, cfg)

        fmap = build_forward_map(motion.true_model(cfg), cfg.camera())
        warped = warp_image(rs, fmap)

        valid = warped > 0
        assert valid.mean() > 0.8
        assert mean_abs_intensity_error(warped, gs, valid) < 0.05

    def test_velocity_sweep(self, tmp_path):
        """Test median velocities within 15% of truth for cells at 40 km/h and above."""
        cfg = SweepConfig(
            speeds_kmh=[20.0, 60.0, 100.0, 140.0],
            angular_deg_s=[10.0, 40.0, 70.0],
            trials=25,
        )

        summary = summarize_sweep(run_sweep(cfg))

        fast = summary[summary["true_speed_kmh"] >= 40.0]
        assert len(fast) == 9
        assert (fast["speed_rel_error"] <= 0.15).all()
        assert (fast["angular_rel_error"] <= 0.15).all()
