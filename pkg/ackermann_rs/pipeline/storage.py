"""On-disk artifacts of one run."""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Sequence

import cv2
import numpy as np
import pandas as pd

from ackermann_rs.exceptions import ParseError
from ackermann_rs.extractors import format_segments
from ackermann_rs.models import RunManifest, SegmentRs

logger = logging.getLogger(__name__)


class RunStorage:
    """Writes the artifacts of a run below one directory."""

    def __init__(self, base_path: Path):
        """Initialize storage with base path.

        Args:
            base_path: Directory for this run's outputs (created if missing)
        """
        self.base_path = Path(base_path)
        self.base_path.mkdir(parents=True, exist_ok=True)

    def path(self, name: str) -> Path:
        return self.base_path / name

    def save_json(self, data: Dict[str, Any], name: str) -> Path:
        """Write a JSON document with stable key order."""
        file_path = self.path(name)
        with open(file_path, "w") as f:
            json.dump(data, f, indent=2, sort_keys=True)
            f.write("\n")
        logger.info(f"Saved {file_path}")
        return file_path

    def save_segments(self, segments: Sequence[SegmentRs], name: str = "segments.jsonl") -> Path:
        """Write segments as JSON-lines."""
        file_path = self.path(name)
        with open(file_path, "w", encoding="utf-8") as f:
            f.write(format_segments(segments))
        logger.info(f"Saved {len(segments)} segments to {file_path}")
        return file_path

    def save_image(self, image: np.ndarray, name: str) -> Path:
        """Write an image; the extension picks the format (PGM for gray, PNG for colour)."""
        file_path = self.path(name)
        if not cv2.imwrite(str(file_path), image):
            raise OSError(f"Could not write image {file_path}")
        logger.info(f"Saved {file_path}")
        return file_path

    def save_table(self, frame: pd.DataFrame, name: str) -> Path:
        """Write a CSV table."""
        file_path = self.path(name)
        frame.to_csv(file_path, index=False, float_format="%.10g")
        logger.info(f"Saved {len(frame)} rows to {file_path}")
        return file_path

    def save_text(self, text: str, name: str) -> Path:
        file_path = self.path(name)
        file_path.write_text(text, encoding="utf-8")
        return file_path

    def save_manifest(self, manifest: RunManifest) -> Path:
        """Write ``manifest.json``."""
        file_path = self.path("manifest.json")
        with open(file_path, "w") as f:
            f.write(manifest.model_dump_json(indent=2))
            f.write("\n")
        return file_path


def load_gray_image(path: Path) -> np.ndarray:
    """Read an image as 8-bit grayscale.

    Raises:
        ParseError: If the file is missing or not an image
    """
    image = cv2.imread(str(path), cv2.IMREAD_UNCHANGED)
    if image is None:
        raise ParseError(f"Cannot read image {path}")
    if image.ndim == 3:
        image = cv2.cvtColor(image, cv2.COLOR_BGR2GRAY)
    if image.dtype != np.uint8:
        image = cv2.convertScaleAbs(image, alpha=255.0 / max(1, int(image.max())))
    return image
