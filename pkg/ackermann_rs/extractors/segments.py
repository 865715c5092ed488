"""JSON-lines segment files: one {id, x1, y1, x2, y2, len} object per line."""
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from ackermann_rs.exceptions import ParseError
from ackermann_rs.models import CameraModel, SegmentRs

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ("x1", "y1", "x2", "y2")


def segment_record(seg: SegmentRs) -> Dict[str, Any]:
    """JSON object written for one segment."""
    return {
        "id": seg.id,
        "x1": seg.top[0],
        "y1": seg.top[1],
        "x2": seg.bottom[0],
        "y2": seg.bottom[1],
        "len": seg.length_px,
    }


def format_segments(segments: Sequence[SegmentRs]) -> str:
    """Serialise segments as JSON-lines text."""
    return "".join(json.dumps(segment_record(s)) + "\n" for s in segments)


class SegmentExtractor:
    """Parse JSON-lines segment files into :class:`SegmentRs` objects."""

    def __init__(self, camera: CameraModel):
        """Initialize extractor.

        Args:
            camera: Camera used to normalize endpoints
        """
        self.camera = camera

    def extract_from_file(self, path: Path) -> List[SegmentRs]:
        """Read and parse a segments file."""
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ParseError(f"Cannot read segments file {path}: {e}") from e
        return self.extract_from_text(text)

    def extract_from_text(self, text: str) -> List[SegmentRs]:
        """Parse JSON-lines text.

        Args:
            text: One JSON object per non-empty line

        Returns:
            Parsed segments; horizontal ones are skipped

        Raises:
            ParseError: On malformed lines or duplicate ids
        """
        segments: List[SegmentRs] = []
        seen = set()
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            seg = self._parse_line(line, lineno, len(segments))
            if seg is None:
                continue
            if seg.id in seen:
                raise ParseError(f"Line {lineno}: duplicate segment id {seg.id}")
            seen.add(seg.id)
            segments.append(seg)
        logger.info(f"Parsed {len(segments)} segments")
        return segments

    def _parse_line(self, line: str, lineno: int, default_id: int) -> Optional[SegmentRs]:
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise ParseError(f"Line {lineno}: invalid JSON ({e.msg})") from e
        if not isinstance(record, dict):
            raise ParseError(f"Line {lineno}: expected a JSON object")
        missing = [k for k in REQUIRED_KEYS if k not in record]
        if missing:
            raise ParseError(f"Line {lineno}: missing keys {missing}")
        try:
            x1, y1, x2, y2 = (float(record[k]) for k in REQUIRED_KEYS)
            seg_id = int(record.get("id", default_id))
            stored_len = float(record["len"]) if "len" in record else None
        except (TypeError, ValueError) as e:
            raise ParseError(f"Line {lineno}: non-numeric field ({e})") from e
        if not all(math.isfinite(v) for v in (x1, y1, x2, y2)):
            raise ParseError(f"Line {lineno}: non-finite coordinate")
        if y1 == y2:
            logger.warning(f"Line {lineno}: skipping horizontal segment {seg_id}")
            return None
        try:
            seg = SegmentRs.from_pixels(seg_id, (x1, y1), (x2, y2), self.camera)
        except ValidationError as e:
            raise ParseError(f"Line {lineno}: {e}") from e
        if stored_len is not None and abs(stored_len - seg.length_px) > 1e-6:
            logger.warning(f"Line {lineno}: stored len differs from endpoints, recomputed")
        return seg
