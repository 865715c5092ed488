"""Process-level settings read from the environment."""
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Environment-driven defaults shared by the CLI and the harnesses.

    Every field can be overridden with an ``ACKRS_`` prefixed variable,
    e.g. ``ACKRS_SEED=7``.
    """

    seed: int = Field(default=0, description="Default seed for seeded commands")
    log_level: str = Field(default="INFO", description="Root logging level")
    output_dir: Path = Field(
        default=Path("ackermann_rs_runs"),
        description="Default directory for run artifacts"
    )

    model_config = SettingsConfigDict(env_prefix="ACKRS_")


def get_settings() -> Settings:
    """Load settings from the current environment."""
    return Settings()
