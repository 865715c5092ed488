"""Sweep, report and benchmark harness."""
from .bench import (
    bench_ransac,
    bench_solver,
    check_solver_targets,
    peak_rss_mb,
    run_bench,
    timing_stats,
)
from .height_error import HEIGHT_ERROR_COLUMNS, HeightErrorConfig, run_height_error
from .report import height_error_svg, sweep_svg
from .sweep import (
    SCHEMA_VERSION,
    SWEEP_COLUMNS,
    SweepConfig,
    perturb_vertical,
    run_sweep,
    run_trial,
    summarize_sweep,
)

__all__ = [
    "HEIGHT_ERROR_COLUMNS",
    "HeightErrorConfig",
    "SCHEMA_VERSION",
    "SWEEP_COLUMNS",
    "SweepConfig",
    "bench_ransac",
    "bench_solver",
    "check_solver_targets",
    "height_error_svg",
    "peak_rss_mb",
    "perturb_vertical",
    "run_bench",
    "run_height_error",
    "run_sweep",
    "run_trial",
    "summarize_sweep",
    "sweep_svg",
]
