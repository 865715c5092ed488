"""Timing of minimal solvers and full RANSAC estimates."""
import logging
import time
from typing import Any, Callable, Dict, List

import numpy as np
import psutil

from ackermann_rs.exceptions import AckermannRsError
from ackermann_rs.models import CameraModel, PlausibilityBounds, RansacConfig, SolverVariant
from ackermann_rs.robust import ransac_ackermann
from ackermann_rs.simulator import (
    MotionTruth,
    SceneConfig,
    make_scene,
    random_minimal_instance,
    render_segments,
)
from ackermann_rs.solvers import solve_1la, solve_3la, solve_4la

logger = logging.getLogger(__name__)


def timing_stats(samples: List[float]) -> Dict[str, float]:
    """Mean, median and 95th percentile in seconds."""
    arr = np.asarray(samples, dtype=float)
    if arr.size == 0:
        return {"n": 0, "mean_s": float("nan"), "median_s": float("nan"), "p95_s": float("nan")}
    return {
        "n": int(arr.size),
        "mean_s": float(arr.mean()),
        "median_s": float(np.median(arr)),
        "p95_s": float(np.percentile(arr, 95)),
    }


def _solver_call(variant: SolverVariant, instance) -> Callable[[], Any]:
    segs = instance.segments
    if variant is SolverVariant.FOUR_LINE:
        return lambda: solve_4la(segs[:3], segs[3])
    if variant is SolverVariant.THREE_LINE:
        return lambda: solve_3la(segs[:2], segs[2])
    return lambda: solve_1la(segs[0])


def bench_solver(
    variant: SolverVariant,
    n: int,
    camera: CameraModel,
    seed: int = 0,
) -> Dict[str, float]:
    """Time ``n`` minimal instances of ``variant``; generation is not timed."""
    variant = SolverVariant(variant)
    rng = np.random.default_rng(seed)
    bounds = PlausibilityBounds.from_physical(camera)
    samples = []
    for _ in range(n):
        call = _solver_call(variant, random_minimal_instance(variant, camera, bounds, rng))
        start = time.perf_counter()
        call()
        samples.append(time.perf_counter() - start)
    return timing_stats(samples)


def bench_ransac(
    variant: SolverVariant,
    n: int,
    scene: SceneConfig,
    motion: MotionTruth,
    ransac: RansacConfig,
    seed: int = 0,
) -> Dict[str, float]:
    """Time ``n`` full RANSAC estimates on freshly rendered scenes."""
    variant = SolverVariant(variant)
    camera = scene.camera()
    samples = []
    failures = 0
    for i in range(n):
        segments = render_segments(make_scene(scene, seed + i), motion, scene, seed=seed + i).segments
        cfg = ransac.model_copy(update={"rng_seed": seed + i})
        start = time.perf_counter()
        try:
            ransac_ackermann(segments, variant, cfg, camera)
        except AckermannRsError as e:
            failures += 1
            logger.warning(f"RANSAC run {i} failed: {e}")
        samples.append(time.perf_counter() - start)
    stats = timing_stats(samples)
    stats["failures"] = failures
    return stats


def peak_rss_mb() -> float:
    """Resident set size of this process in MiB."""
    return psutil.Process().memory_info().rss / (1024 * 1024)


# Median solver time budgets, seconds
SOLVER_MEDIAN_TARGETS_S = {
    SolverVariant.FOUR_LINE.value: 0.010,
    SolverVariant.ONE_LINE.value: 0.001,
}
SOLVER_SPEED_ORDER = [
    v.value for v in (SolverVariant.ONE_LINE, SolverVariant.THREE_LINE, SolverVariant.FOUR_LINE)
]


def check_solver_targets(solver_stats: Dict[str, Dict[str, float]]) -> Dict[str, bool]:
    """Compare solver medians with their budgets and with each other.

    Args:
        solver_stats: :func:`timing_stats` output keyed by variant value

    Returns:
        ``<variant>`` -> within budget for every timed variant that has one,
        plus ``order`` (1-LA <= 3-LA <= 4-LA) when all three were timed
    """
    checks = {
        name: solver_stats[name]["median_s"] < budget
        for name, budget in SOLVER_MEDIAN_TARGETS_S.items()
        if name in solver_stats
    }
    if all(name in solver_stats for name in SOLVER_SPEED_ORDER):
        medians = [solver_stats[name]["median_s"] for name in SOLVER_SPEED_ORDER]
        checks["order"] = bool(np.all(np.diff(medians) >= 0))
    for name, ok in checks.items():
        if not ok:
            logger.warning(f"Solver timing target missed: {name}")
    return checks


def run_bench(
    variants: List[SolverVariant],
    n: int,
    scene: SceneConfig,
    motion: MotionTruth,
    seed: int = 0,
) -> Dict[str, Any]:
    """Solver-only and full-estimate timings for each variant."""
    camera = scene.camera()
    report: Dict[str, Any] = {"n": n, "seed": seed, "variants": {}}
    for variant in variants:
        variant = SolverVariant(variant)
        logger.info(f"Benchmarking {variant.value} on {n} instances")
        report["variants"][variant.value] = {
            "solver": bench_solver(variant, n, camera, seed),
            "ransac": bench_ransac(variant, n, scene, motion, RansacConfig(), seed),
        }
    report["targets"] = check_solver_targets(
        {name: stats["solver"] for name, stats in report["variants"].items()}
    )
    report["rss_mb"] = peak_rss_mb()
    return report
