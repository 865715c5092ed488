"""Rolling-shutter compensation for vehicles under Ackermann motion."""

__version__ = "0.1.0"

from ackermann_rs.pipeline import CompensationPipeline

__all__ = ["CompensationPipeline"]
