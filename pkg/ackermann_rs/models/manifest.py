"""Run manifest written next to every command's artifacts."""
from datetime import datetime
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, field_serializer


class RunManifest(BaseModel):
    """Record of one CLI run: what went in, what came out, how long it took."""

    command: str = Field(..., min_length=1, description="CLI command name")
    version: str = Field(..., description="Package version")
    seed: Optional[int] = Field(None, description="Seed for seeded commands")
    config: Dict[str, Any] = Field(default_factory=dict, description="Config snapshot")
    inputs: Dict[str, str] = Field(default_factory=dict, description="Input paths by role")
    outputs: Dict[str, str] = Field(default_factory=dict, description="Output paths by role")
    timings: Dict[str, float] = Field(default_factory=dict, description="Seconds per stage")
    peak_rss_mb: Optional[float] = Field(None, description="Resident memory at the end of the run")
    created_at: datetime = Field(default_factory=datetime.now, description="Start time")

    @field_serializer("created_at")
    def serialize_datetime(self, v: datetime) -> str:
        """Serialize datetime to ISO format."""
        return v.isoformat()

    model_config = ConfigDict()
