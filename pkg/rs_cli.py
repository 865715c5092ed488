#!/usr/bin/env python3
"""CLI for rolling-shutter compensation under Ackermann motion."""
import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Type, TypeVar

import pandas as pd
from pydantic import BaseModel, ValidationError

from ackermann_rs import __version__
from ackermann_rs.exceptions import (
    AckermannRsError,
    EstimationFailedError,
    InsufficientDataError,
    ParseError,
)
from ackermann_rs.experiments import (
    HeightErrorConfig,
    SweepConfig,
    height_error_svg,
    peak_rss_mb,
    run_bench,
    run_height_error,
    run_sweep,
    summarize_sweep,
    sweep_svg,
)
from ackermann_rs.extractors import (
    CameraExtractor,
    LsdExtractor,
    ModelExtractor,
    SegmentExtractor,
    camera_record,
    load_config,
    model_record,
)
from ackermann_rs.models import CameraModel, RansacConfig, RunManifest, SideLabel, SolverVariant
from ackermann_rs.pipeline import CompensationPipeline, RunStorage, draw_overlay, load_gray_image
from ackermann_rs.settings import get_settings
from ackermann_rs.simulator import (
    MotionTruth,
    SceneConfig,
    make_scene,
    render_gs_image,
    render_rs_image,
    render_segments,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_INSUFFICIENT = 3
EXIT_ESTIMATION = 4


def setup_logging(args) -> None:
    """Configure root logging from flags or ``ACKRS_LOG_LEVEL``."""
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    else:
        level = getattr(logging, get_settings().log_level.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        force=True,
    )


def _seed(args) -> int:
    return args.seed if args.seed is not None else get_settings().seed


def _out_dir(args, command: str) -> Path:
    return Path(args.out) if args.out else get_settings().output_dir / command


def _float_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"Expected comma-separated numbers: {text}") from e


def _snapshot(args) -> Dict[str, Any]:
    """JSON-safe copy of the parsed flags."""
    return {
        k: (str(v) if isinstance(v, Path) else v)
        for k, v in vars(args).items()
        if k != "func" and (v is None or isinstance(v, (str, int, float, bool, list, Path)))
    }


def _camera_from_args(args) -> CameraModel:
    """Camera from ``--camera`` or the uncalibrated fallback of ``--width/--height``."""
    if getattr(args, "camera", None):
        return CameraExtractor().extract_from_file(args.camera)
    if args.width and args.height_px:
        logger.info("No camera file, using the uncalibrated fallback focal length")
        return CameraModel.uncalibrated(args.width, args.height_px, args.tau or 0.0)
    raise ParseError("Either --camera or --width and --height-px are required")


M = TypeVar("M", bound=BaseModel)


def _validated(model_cls: Type[M], data: Dict[str, Any]) -> M:
    """Validate flag values into ``model_cls``; bad values are parse errors."""
    try:
        return model_cls.model_validate(data)
    except ValidationError as e:
        raise ParseError(f"Invalid {model_cls.__name__}: {e}") from e


def _write_manifest(
    storage: RunStorage,
    command: str,
    args,
    seed: Optional[int],
    inputs: Dict[str, str],
    outputs: Dict[str, Path],
    timings: Dict[str, float],
    config: Optional[Dict[str, Any]] = None,
) -> None:
    manifest = RunManifest(
        command=command,
        version=__version__,
        seed=seed,
        config={"args": _snapshot(args), **(config or {})},
        inputs=inputs,
        outputs={k: str(v) for k, v in outputs.items()},
        timings=timings,
        peak_rss_mb=peak_rss_mb(),
    )
    storage.save_manifest(manifest)


def cmd_simulate(args) -> int:
    """Render a synthetic RS frame with its segments and ground truth."""
    cfg = load_config(args.config, SceneConfig) if args.config else SceneConfig()
    overrides = {
        k: v
        for k, v in (
            ("outlier_fraction", args.outliers),
            ("pixel_noise_std", args.noise),
            ("model_order", args.model_order),
            ("depth_convention", args.depth_convention),
        )
        if v is not None
    }
    if overrides:
        cfg = _validated(SceneConfig, {**cfg.model_dump(), **overrides})
    motion = MotionTruth(angular_velocity=args.angular, translational_velocity=args.speed)
    seed = _seed(args)
    timings: Dict[str, float] = {}

    start = time.perf_counter()
    rendered = render_segments(make_scene(cfg, seed), motion, cfg, seed=seed)
    timings["segments"] = time.perf_counter() - start
    start = time.perf_counter()
    gs_image = render_gs_image(cfg)
    rs_image = render_rs_image(gs_image, motion, cfg)
    timings["images"] = time.perf_counter() - start

    storage = RunStorage(_out_dir(args, "simulate"))
    truth = {
        "motion": motion.model_dump(),
        "model": model_record(rendered.true_model, cfg.row_delay, cfg.gauge_length_m),
        "scene": cfg.model_dump(mode="json"),
    }
    outputs = {
        "rs_image": storage.save_image(rs_image, "rs.pgm"),
        "gs_image": storage.save_image(gs_image, "gs.pgm"),
        "segments": storage.save_segments(rendered.segments, "segments.jsonl"),
        "gs_segments": storage.save_segments(rendered.gs_segments, "gs_segments.jsonl"),
        "camera": storage.save_json(camera_record(cfg.camera()), "camera.json"),
        "truth": storage.save_json(truth, "truth.json"),
        "labels": storage.save_json(
            {
                "segment_ids": [s.id for s in rendered.segments],
                "labels": [label.value for label in rendered.labels],
            },
            "labels.json",
        ),
    }
    _write_manifest(storage, "simulate", args, seed, {}, outputs, timings, {"scene": truth["scene"]})

    print(f"\n✓ Simulated {len(rendered.segments)} segments "
          f"({len(rendered.segments) - rendered.inlier_count} outliers, {rendered.dropped} dropped)")
    print(f"  Output: {storage.base_path}")
    return EXIT_OK


def cmd_estimate(args) -> int:
    """Estimate the RS model from a segments file."""
    camera = _camera_from_args(args)
    segments = SegmentExtractor(camera).extract_from_file(args.segments)
    seed = _seed(args)
    cfg = _validated(
        RansacConfig,
        {
            "inlier_threshold_px": args.threshold,
            "confidence": args.confidence,
            "max_iterations": args.max_iterations,
            "min_segment_len_px": args.min_length,
            "rng_seed": seed,
            "n_workers": args.workers,
        },
    )

    pipeline = CompensationPipeline(camera, cfg, SolverVariant(args.variant))
    result = pipeline.estimate(segments)

    storage = RunStorage(_out_dir(args, "estimate"))
    gauge = args.gauge_length
    record = model_record(result.model, camera.row_delay or None, gauge)
    outputs = {
        "model": storage.save_json(record, "model.json"),
        "estimate": storage.save_json(
            result.model_dump(mode="json"),
            "estimate.json",
        ),
    }
    inputs = {"segments": str(args.segments)}
    if args.camera:
        inputs["camera"] = str(args.camera)
    _write_manifest(storage, "estimate", args, seed, inputs, outputs, dict(pipeline.timings))

    print(f"\n✓ Estimated {result.variant.value} model "
          f"({result.best_inlier_count}/{len(result.segment_ids)} inliers, "
          f"{result.iterations_run} samples)")
    print(f"  alpha_row: {result.model.alpha:.6e}  beta_row: {result.model.beta:.6e}")
    print(f"  delta: {result.model.depth.delta}  lambda: {result.model.depth.lambda_right}")
    units = record["units"]
    if "translational_velocity_kmh" in units:
        print(f"  {units['translational_velocity_kmh']:.1f} km/h, "
              f"{units['angular_velocity_deg_s']:.1f} deg/s")
    return EXIT_OK


def _overlay_segments(args, camera: CameraModel):
    if not args.segments:
        return [], []
    segments = SegmentExtractor(camera).extract_from_file(args.segments)
    if not args.estimate:
        return segments, [SideLabel.OUTLIER] * len(segments)
    try:
        doc = json.loads(Path(args.estimate).read_text(encoding="utf-8"))
        labels = dict(zip(doc["segment_ids"], doc["labels"]))
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as e:
        raise ParseError(f"Invalid estimate file {args.estimate}: {e}") from e
    kept = [s for s in segments if s.id in labels]
    return kept, [SideLabel(labels[s.id]) for s in kept]


def cmd_rectify(args) -> int:
    """Warp an RS image with an estimated model and draw the plane boundaries."""
    image = load_gray_image(args.image)
    camera = _camera_from_args(args)
    model = ModelExtractor().extract_from_file(args.model)
    if model.depth.delta is None or model.depth.lambda_right is None:
        raise ParseError("Model needs delta and lambda to rectify")
    if args.height is not None:
        if args.height <= 0:
            raise ParseError("--height must be positive")
        model = model.with_ground(args.gauge_length / args.height)
    elif model.depth.lambda_ground <= 0:
        raise ParseError("Give --height or a model with lambda_ground")
    if image.shape != (camera.height, camera.width):
        raise ParseError(f"Image is {image.shape[1]}x{image.shape[0]}, camera is "
                         f"{camera.width}x{camera.height}")
    segments, labels = _overlay_segments(args, camera)

    pipeline = CompensationPipeline(camera)
    warped, _ = pipeline.rectify(image, model)
    boundaries = pipeline.boundaries(model)
    overlay = draw_overlay(image, segments, labels, boundaries)

    storage = RunStorage(_out_dir(args, "rectify"))
    outputs = {
        "rectified": storage.save_image(warped, "rectified.pgm"),
        "overlay": storage.save_image(overlay, "overlay.png"),
        "boundaries": storage.save_json(
            {name: b.tolist() for name, b in zip(("left", "right"), boundaries)},
            "boundaries.json",
        ),
    }
    inputs = {"image": str(args.image), "model": str(args.model)}
    _write_manifest(storage, "rectify", args, None, inputs, outputs, dict(pipeline.timings))
    print(f"\n✓ Rectified {args.image}")
    print(f"  Output: {storage.base_path}")
    return EXIT_OK


def sweep_progress(done: int, total: int) -> None:
    """Print sweep progress."""
    print(f"\r[{done}/{total}] trials", end='', flush=True)


def cmd_sweep(args) -> int:
    """Run the velocity sweep and write CSV plus SVG box plots."""
    cfg = load_config(args.config, SweepConfig) if args.config else SweepConfig()
    overrides: Dict[str, Any] = {"base_seed": _seed(args)}
    for key, value in (
        ("speeds_kmh", args.speeds),
        ("angular_deg_s", args.angular),
        ("trials", args.trials),
        ("variant", args.variant),
        ("imu_noise_deg", args.imu_noise),
        ("gauge_error_m", args.gauge_error),
    ):
        if value is not None:
            overrides[key] = value
    cfg = _validated(SweepConfig, {**cfg.model_dump(), **overrides})
    storage = RunStorage(_out_dir(args, "sweep"))

    start = time.perf_counter()
    frame = run_sweep(cfg, progress_callback=None if args.quiet else sweep_progress)
    if not args.quiet:
        print()
    timings = {"sweep": time.perf_counter() - start}
    csv_path = storage.save_table(frame, "sweep.csv")
    summary = summarize_sweep(frame)
    outputs = {
        "csv": csv_path,
        "summary": storage.save_table(summary, "sweep_summary.csv"),
        # the plot is rendered from the written CSV, as `report` would
        "svg": storage.save_text(sweep_svg(pd.read_csv(csv_path)), "sweep.svg"),
    }
    _write_manifest(
        storage, "sweep", args, cfg.base_seed, {}, outputs, timings,
        {"sweep": cfg.model_dump(mode="json")},
    )

    ok = int((frame["status"] == "ok").sum())
    print(f"\n✓ Sweep finished: {ok}/{len(frame)} trials succeeded")
    for row in summary.itertuples():
        print(f"  {row.true_speed_kmh:g} km/h, {row.true_angular_deg_s:g} deg/s: "
              f"median {row.median_speed_kmh:.1f} km/h, {row.median_angular_deg_s:.1f} deg/s")
    return EXIT_OK


def cmd_report(args) -> int:
    """Re-render the SVG of an existing sweep CSV."""
    try:
        frame = pd.read_csv(args.csv)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise ParseError(f"Cannot read sweep CSV {args.csv}: {e}") from e
    missing = {"status", "true_speed_kmh", "true_angular_deg_s"} - set(frame.columns)
    if missing:
        raise ParseError(f"Sweep CSV missing columns {sorted(missing)}")
    storage = RunStorage(_out_dir(args, "report"))
    outputs = {"svg": storage.save_text(sweep_svg(frame), "sweep.svg")}
    _write_manifest(storage, "report", args, None, {"csv": str(args.csv)}, outputs, {})
    print(f"\n✓ Wrote {outputs['svg']}")
    return EXIT_OK


def cmd_height_error(args) -> int:
    """Rectify one frame under wrong camera heights and plot the image error."""
    cfg = load_config(args.config, HeightErrorConfig) if args.config else HeightErrorConfig()
    overrides: Dict[str, Any] = {"seed": _seed(args)}
    for key, value in (
        ("height_errors_m", args.errors),
        ("speed_kmh", args.speed),
        ("angular_deg_s", args.angular),
    ):
        if value is not None:
            overrides[key] = value
    cfg = _validated(HeightErrorConfig, {**cfg.model_dump(), **overrides})
    storage = RunStorage(_out_dir(args, "height-error"))

    start = time.perf_counter()
    frame = run_height_error(cfg)
    timings = {"height_error": time.perf_counter() - start}
    csv_path = storage.save_table(frame, "height_error.csv")
    outputs = {
        "csv": csv_path,
        "svg": storage.save_text(height_error_svg(pd.read_csv(csv_path)), "height_error.svg"),
    }
    _write_manifest(
        storage, "height-error", args, cfg.seed, {}, outputs, timings,
        {"height_error": cfg.model_dump(mode="json")},
    )

    print(f"\n✓ Height error at {cfg.speed_kmh:g} km/h, {cfg.angular_deg_s:g} deg/s")
    for row in frame.itertuples():
        print(f"  {row.height_error_m * 100:+.0f} cm: {row.intensity_error * 100:.2f}% "
              f"(ground {row.ground_intensity_error * 100:.2f}%) {row.status}")
    return EXIT_OK


def cmd_bench(args) -> int:
    """Time minimal solvers and full RANSAC estimates."""
    variants = (
        list(SolverVariant) if args.variant == "all" else [SolverVariant(args.variant)]
    )
    scene = SceneConfig(pixel_noise_std=0.3, outlier_fraction=0.2)
    motion = MotionTruth(angular_velocity=40.0, translational_velocity=60.0)
    seed = _seed(args)
    start = time.perf_counter()
    report = run_bench(variants, args.n, scene, motion, seed)
    storage = RunStorage(_out_dir(args, "bench"))
    outputs = {"report": storage.save_json(report, "bench.json")}
    _write_manifest(
        storage, "bench", args, seed, {}, outputs, {"bench": time.perf_counter() - start}
    )

    print(f"\n✓ Benchmark ({args.n} instances each)")
    for name, stats in report["variants"].items():
        solver, ransac = stats["solver"], stats["ransac"]
        print(f"  {name}: solver median {solver['median_s'] * 1e3:.3f} ms "
              f"(p95 {solver['p95_s'] * 1e3:.3f} ms), "
              f"RANSAC median {ransac['median_s'] * 1e3:.1f} ms")
    for name, ok in report["targets"].items():
        print(f"  target {name}: {'met' if ok else 'MISSED'}")
    print(f"  RSS: {report['rss_mb']:.1f} MiB")
    return EXIT_OK


def cmd_convert_lsd(args) -> int:
    """Convert `lsd` detector text output to segments JSON-lines."""
    camera = _camera_from_args(args)
    segments = LsdExtractor(camera).extract_from_file(args.lsd)
    storage = RunStorage(_out_dir(args, "convert-lsd"))
    outputs = {"segments": storage.save_segments(segments, "segments.jsonl")}
    _write_manifest(storage, "convert-lsd", args, None, {"lsd": str(args.lsd)}, outputs, {})
    print(f"\n✓ Converted {len(segments)} segments")
    return EXIT_OK


def cmd_manpage(args) -> int:
    """Print or write the manual page of every command."""
    text = manpage(build_parser())
    if args.out:
        path = Path(args.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        print(f"✓ Wrote {path}")
    else:
        print(text)
    return EXIT_OK


def manpage(parser: argparse.ArgumentParser) -> str:
    """Plain-text manual assembled from the parser and its subcommands."""
    sections = [f"{parser.prog.upper()}(1)", "", parser.format_help()]
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            for name, sub in action.choices.items():
                sections += ["", f"COMMAND {name}", "", sub.format_help()]
    sections += [
        "",
        "EXIT STATUS",
        f"  {EXIT_OK}  success",
        f"  {EXIT_ERROR}  other error",
        f"  {EXIT_PARSE}  input could not be parsed",
        f"  {EXIT_INSUFFICIENT}  not enough segments",
        f"  {EXIT_ESTIMATION}  estimation failed",
        "",
        "ENVIRONMENT",
        "  ACKRS_SEED        default seed of seeded commands",
        "  ACKRS_LOG_LEVEL   logging level (DEBUG, INFO, WARNING)",
        "  ACKRS_OUTPUT_DIR  parent directory of default run outputs",
    ]
    return "\n".join(sections) + "\n"


def _add_camera_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--camera", type=Path, help="Camera JSON {f, cx, cy, w, h, tau}")
    parser.add_argument("--width", type=int, help="Image width without a camera file")
    parser.add_argument("--height-px", dest="height_px", type=int,
                        help="Image height without a camera file")
    parser.add_argument("--tau", type=float, help="Row delay in seconds without a camera file")


def build_parser() -> argparse.ArgumentParser:
    """Root parser with all subcommands."""
    parser = argparse.ArgumentParser(
        prog="ackermann-rs",
        description="Rolling-shutter compensation for vehicles under Ackermann motion",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--verbose", action="store_true", help="Debug logging")
    parser.add_argument("--quiet", action="store_true", help="Warnings only, no progress")

    subparsers = parser.add_subparsers(dest="command", help="Commands")
    variants = [v.value for v in SolverVariant]

    # Simulate command
    p = subparsers.add_parser("simulate", help="Render a synthetic RS frame")
    p.add_argument("--config", type=Path, help="Scene config JSON")
    p.add_argument("--speed", type=float, default=60.0, help="Speed in km/h (default: 60)")
    p.add_argument("--angular", type=float, default=40.0, help="Yaw rate in deg/s (default: 40)")
    p.add_argument("--outliers", type=float, help="Outlier fraction")
    p.add_argument("--noise", type=float, help="Endpoint noise in pixels")
    p.add_argument("--model-order", dest="model_order", choices=["exact", "second_order"])
    p.add_argument(
        "--depth-convention",
        dest="depth_convention",
        choices=["rs_column", "physical"],
        help="Depth of exact-pose endpoints (default: rs_column)",
    )
    p.add_argument("--seed", type=int, help="Seed (default: ACKRS_SEED)")
    p.add_argument("--out", help="Output directory")
    p.set_defaults(func=cmd_simulate)

    # Estimate command
    p = subparsers.add_parser("estimate", help="Estimate the RS model from segments")
    p.add_argument("segments", type=Path, help="Segments JSON-lines file")
    _add_camera_args(p)
    p.add_argument("--variant", choices=variants, default="4la", help="Minimal solver")
    p.add_argument("--threshold", type=float, default=0.5, help="Inlier threshold in pixels")
    p.add_argument("--confidence", type=float, default=0.99, help="RANSAC confidence")
    p.add_argument("--max-iterations", dest="max_iterations", type=int, default=10000)
    p.add_argument("--min-length", dest="min_length", type=float, default=35.0,
                   help="Shorter segments are pruned")
    p.add_argument("--workers", type=int, default=1, help="Solver threads")
    p.add_argument("--gauge-length", dest="gauge_length", type=float,
                   help="Left-wall distance in metres, enables km/h and deg/s output")
    p.add_argument("--seed", type=int, help="Seed (default: ACKRS_SEED)")
    p.add_argument("--out", help="Output directory")
    p.set_defaults(func=cmd_estimate)

    # Rectify command
    p = subparsers.add_parser("rectify", help="Warp an RS image with a model")
    p.add_argument("image", type=Path, help="RS image")
    p.add_argument("--model", type=Path, required=True, help="Model JSON from estimate")
    _add_camera_args(p)
    p.add_argument("--height", type=float, help="Camera height above ground in metres")
    p.add_argument("--gauge-length", dest="gauge_length", type=float, default=2.5,
                   help="Left-wall distance in metres (default: 2.5)")
    p.add_argument("--segments", type=Path, help="Segments to draw on the overlay")
    p.add_argument("--estimate", type=Path, help="estimate.json with side labels")
    p.add_argument("--out", help="Output directory")
    p.set_defaults(func=cmd_rectify)

    # Sweep command
    p = subparsers.add_parser("sweep", help="Monte-Carlo velocity sweep")
    p.add_argument("--config", type=Path, help="Sweep config JSON")
    p.add_argument("--speeds", type=_float_list, help="Comma-separated km/h values")
    p.add_argument("--angular", type=_float_list, help="Comma-separated deg/s values")
    p.add_argument("--trials", type=int, help="Trials per cell")
    p.add_argument("--variant", choices=variants, help="Minimal solver")
    p.add_argument("--imu-noise", dest="imu_noise", type=float,
                   help="Vertical-direction error in degrees")
    p.add_argument("--gauge-error", dest="gauge_error", type=float,
                   help="Error on the left-wall distance in metres")
    p.add_argument("--seed", type=int, help="Base seed (default: ACKRS_SEED)")
    p.add_argument("--out", help="Output directory")
    p.set_defaults(func=cmd_sweep)

    # Report command
    p = subparsers.add_parser("report", help="Render the SVG of a sweep CSV")
    p.add_argument("csv", type=Path, help="sweep.csv")
    p.add_argument("--out", help="Output directory")
    p.set_defaults(func=cmd_report)

    # Height-error command
    p = subparsers.add_parser("height-error", help="Rectification under camera-height error")
    p.add_argument("--config", type=Path, help="Height-error config JSON")
    p.add_argument("--errors", type=_float_list, help="Comma-separated height errors in metres")
    p.add_argument("--speed", type=float, help="Speed in km/h (default: 60)")
    p.add_argument("--angular", type=float, help="Yaw rate in deg/s (default: 40)")
    p.add_argument("--seed", type=int, help="Seed (default: ACKRS_SEED)")
    p.add_argument("--out", help="Output directory")
    p.set_defaults(func=cmd_height_error)

    # Bench command
    p = subparsers.add_parser("bench", help="Time solvers and RANSAC")
    p.add_argument("--variant", choices=variants + ["all"], default="all")
    p.add_argument("-n", type=int, default=100, help="Instances per variant")
    p.add_argument("--seed", type=int, help="Seed (default: ACKRS_SEED)")
    p.add_argument("--out", help="Output directory")
    p.set_defaults(func=cmd_bench)

    # Convert-lsd command
    p = subparsers.add_parser("convert-lsd", help="Convert lsd output to segments JSON-lines")
    p.add_argument("lsd", type=Path, help="lsd text output")
    _add_camera_args(p)
    p.add_argument("--out", help="Output directory")
    p.set_defaults(func=cmd_convert_lsd)

    # Manpage command
    p = subparsers.add_parser("manpage", help="Print the manual page")
    p.add_argument("--out", help="Write to this file instead of stdout")
    p.set_defaults(func=cmd_manpage)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse ``argv``, run the command and map errors to exit codes."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help()
        return EXIT_ERROR
    setup_logging(args)

    handlers: List[tuple] = [
        (ParseError, EXIT_PARSE, "Invalid input"),
        (InsufficientDataError, EXIT_INSUFFICIENT, "Not enough data"),
        (EstimationFailedError, EXIT_ESTIMATION, "Estimation failed"),
        (AckermannRsError, EXIT_ERROR, "Failed"),
    ]
    try:
        return args.func(args)
    except AckermannRsError as e:
        for cls, code, label in handlers:
            if isinstance(e, cls):
                print(f"\n✗ {label}: {e}", file=sys.stderr)
                return code
        raise


def main():
    """Main CLI entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
