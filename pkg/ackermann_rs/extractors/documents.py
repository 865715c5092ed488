"""Camera and model JSON documents."""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Type, TypeVar

from pydantic import BaseModel, ValidationError

from ackermann_rs.exceptions import ParseError
from ackermann_rs.models import CameraModel, RsModel, physical_from_rates

logger = logging.getLogger(__name__)

M = TypeVar("M", bound=BaseModel)


def _load_json(text: str, what: str) -> Dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid {what} JSON: {e.msg} (line {e.lineno})") from e
    if not isinstance(doc, dict):
        raise ParseError(f"{what} document must be a JSON object")
    return doc


def _read(path: Path, what: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"Cannot read {what} file {path}: {e}") from e


def load_config(path: Path, model_cls: Type[M]) -> M:
    """Validate a JSON config file into ``model_cls``."""
    try:
        return model_cls.model_validate_json(_read(path, "config"))
    except ValidationError as e:
        raise ParseError(f"Invalid config {path}: {e}") from e


def camera_record(camera: CameraModel) -> Dict[str, Any]:
    """Camera as {f, cx, cy, w, h, tau, frame_rate}."""
    return {
        "f": camera.focal_px,
        "cx": camera.cx,
        "cy": camera.cy,
        "w": camera.width,
        "h": camera.height,
        "tau": camera.row_delay,
        "frame_rate": camera.frame_rate,
    }


def model_record(
    model: RsModel,
    row_delay: Optional[float] = None,
    gauge_length_m: Optional[float] = None,
) -> Dict[str, Any]:
    """Model as {alpha_row, beta_row, delta, lambda, lambda_ground, units}.

    Physical units are added when both the row delay and the gauge length
    are known.
    """
    units: Dict[str, Any] = {"alpha_row": "rad/row", "beta_row": "gauge/row"}
    if row_delay and gauge_length_m:
        angular, speed = physical_from_rates(model.alpha, model.beta, row_delay, gauge_length_m)
        units.update(
            {
                "angular_velocity_deg_s": angular,
                "translational_velocity_kmh": speed,
                "row_delay_s": row_delay,
                "gauge_length_m": gauge_length_m,
            }
        )
    return {
        "alpha_row": model.alpha,
        "beta_row": model.beta,
        "delta": model.depth.delta,
        "lambda": model.depth.lambda_right,
        "lambda_ground": model.depth.lambda_ground,
        "units": units,
    }


class CameraExtractor:
    """Parse camera documents {f, cx, cy, w, h, tau}."""

    def extract_from_file(self, path: Path) -> CameraModel:
        return self.extract_from_text(_read(path, "camera"))

    def extract_from_text(self, text: str) -> CameraModel:
        """Parse camera JSON.

        Raises:
            ParseError: On malformed JSON, missing keys or invalid values
        """
        doc = _load_json(text, "camera")
        missing = [k for k in ("f", "cx", "cy", "w", "h") if k not in doc]
        if missing:
            raise ParseError(f"Camera document missing keys {missing}")
        try:
            return CameraModel(
                focal_px=doc["f"],
                principal_point=(doc["cx"], doc["cy"]),
                width=doc["w"],
                height=doc["h"],
                row_delay=doc.get("tau", 0.0),
                frame_rate=doc.get("frame_rate", 30.0),
            )
        except ValidationError as e:
            raise ParseError(f"Invalid camera: {e}") from e


class ModelExtractor:
    """Parse model documents written by ``estimate``."""

    def extract_from_file(self, path: Path) -> RsModel:
        return self.extract_from_text(_read(path, "model"))

    def extract_from_text(self, text: str) -> RsModel:
        """Parse model JSON.

        Raises:
            ParseError: On malformed JSON or missing motion fields
        """
        doc = _load_json(text, "model")
        missing = [k for k in ("alpha_row", "beta_row") if k not in doc]
        if missing:
            raise ParseError(f"Model document missing keys {missing}")
        try:
            return RsModel.from_parameters(
                doc["alpha_row"],
                doc["beta_row"],
                doc.get("delta"),
                doc.get("lambda"),
                doc.get("lambda_ground") or 0.0,
            )
        except (ValidationError, TypeError) as e:
            raise ParseError(f"Invalid model: {e}") from e
