"""SVG reports of the sweep and the camera-height experiment, rendered from their CSVs alone."""
import io
import logging
from typing import List, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

from .sweep import STATUS_OK  # noqa: E402

logger = logging.getLogger(__name__)

SVG_RC = {
    "svg.fonttype": "path",
    "svg.hashsalt": "ackermann-rs",
    "path.simplify": False,
}

PANELS = (
    ("est_speed_kmh", "true_speed_kmh", "Translational velocity [km/h]"),
    ("est_angular_deg_s", "true_angular_deg_s", "Angular velocity [deg/s]"),
)


def _cell_groups(frame: pd.DataFrame, column: str) -> Tuple[List[str], List[list], List[tuple]]:
    ok = frame[frame["status"] == STATUS_OK]
    labels, data, truths = [], [], []
    for (speed, angular), group in ok.groupby(["true_speed_kmh", "true_angular_deg_s"], sort=True):
        values = group[column].dropna().tolist()
        if not values:
            continue
        labels.append(f"{speed:g}/{angular:g}")
        data.append(values)
        truths.append((speed, angular))
    return labels, data, truths


def sweep_svg(frame: pd.DataFrame, title: str = "Estimated vs. true velocity") -> str:
    """Render per-cell boxes (quartiles, median, mean) as an SVG document.

    Each cell label reads ``km/h / deg/s``; the true value is drawn as a
    green tick. The output is a self-contained SVG with text as paths.
    """
    with plt.rc_context(SVG_RC):
        fig, axes = plt.subplots(len(PANELS), 1, figsize=(10, 7), squeeze=False)
        for ax, (column, truth_column, ylabel) in zip(axes[:, 0], PANELS):
            labels, data, truths = _cell_groups(frame, column)
            if data:
                ax.boxplot(data, showmeans=True, whis=1.5, showfliers=True)
                truth_index = 0 if truth_column == "true_speed_kmh" else 1
                positions = range(1, len(data) + 1)
                ax.scatter(
                    list(positions),
                    [t[truth_index] for t in truths],
                    marker="_",
                    s=200,
                    color="green",
                    zorder=3,
                )
                ax.set_xticks(list(positions))
                ax.set_xticklabels(labels, rotation=90, fontsize=6)
            ax.set_ylabel(ylabel)
            ax.grid(axis="y", alpha=0.3)
        axes[0, 0].set_title(title)
        axes[-1, 0].set_xlabel("Cell [km/h / deg/s]")
        fig.tight_layout()
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
    logger.debug(f"Rendered sweep SVG for {len(frame)} rows")
    return buf.getvalue()


def height_error_svg(
    frame: pd.DataFrame,
    title: str = "Rectification under camera-height error",
) -> str:
    """Intensity error of the rectified frame against the assumed-height error.

    Whole valid region and ground-only pixels are drawn as two series;
    failed rows are left out.
    """
    ok = frame[frame["status"] == STATUS_OK].sort_values("height_error_m")
    with plt.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=(7, 4))
        if not ok.empty:
            x = ok["height_error_m"] * 100.0
            ax.plot(x, ok["intensity_error"] * 100.0, marker="o", label="valid region")
            ax.plot(x, ok["ground_intensity_error"] * 100.0, marker="s", label="ground")
            ax.legend()
        ax.set_xlabel("Camera height error [cm]")
        ax.set_ylabel("Mean absolute intensity error [% of range]")
        ax.set_title(title)
        ax.grid(alpha=0.3)
        fig.tight_layout()
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
    logger.debug(f"Rendered height-error SVG for {len(frame)} rows")
    return buf.getvalue()
