"""Parsers for segment, camera, model and detector files."""
from .documents import CameraExtractor, ModelExtractor, camera_record, load_config, model_record
from .lsd import LsdExtractor
from .segments import SegmentExtractor, format_segments, segment_record

__all__ = [
    "CameraExtractor",
    "LsdExtractor",
    "ModelExtractor",
    "SegmentExtractor",
    "camera_record",
    "format_segments",
    "load_config",
    "model_record",
    "segment_record",
]
