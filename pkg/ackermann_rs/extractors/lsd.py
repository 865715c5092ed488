"""Plain-text output of the ``lsd`` line segment detector.

Each line holds ``x1 y1 x2 y2 width p -log_nfa``; only the endpoints are
used.
"""
import logging
from pathlib import Path
from typing import List

from pydantic import ValidationError

from ackermann_rs.exceptions import ParseError
from ackermann_rs.models import CameraModel, SegmentRs

logger = logging.getLogger(__name__)

LSD_COLUMNS = 7


class LsdExtractor:
    """Convert ``lsd`` detections into :class:`SegmentRs` objects."""

    def __init__(self, camera: CameraModel):
        self.camera = camera

    def extract_from_file(self, path: Path) -> List[SegmentRs]:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ParseError(f"Cannot read lsd output {path}: {e}") from e
        return self.extract_from_text(text)

    def extract_from_text(self, text: str) -> List[SegmentRs]:
        """Parse detector text; ids follow file order, horizontal segments are skipped.

        Raises:
            ParseError: On rows with the wrong column count or non-numbers
        """
        segments: List[SegmentRs] = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            fields = line.split()
            if not fields or fields[0].startswith("#"):
                continue
            if len(fields) not in (4, LSD_COLUMNS):
                raise ParseError(
                    f"Line {lineno}: expected {LSD_COLUMNS} columns, got {len(fields)}"
                )
            try:
                x1, y1, x2, y2 = (float(v) for v in fields[:4])
            except ValueError as e:
                raise ParseError(f"Line {lineno}: {e}") from e
            if y1 == y2:
                logger.debug(f"Line {lineno}: horizontal detection skipped")
                continue
            try:
                seg = SegmentRs.from_pixels(len(segments), (x1, y1), (x2, y2), self.camera)
            except ValidationError as e:
                raise ParseError(f"Line {lineno}: {e}") from e
            segments.append(seg)
        logger.info(f"Converted {len(segments)} lsd detections")
        return segments
