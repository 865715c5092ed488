"""Minimal solvers for Ackermann rolling-shutter estimation."""
from .candidates import SolverCandidate
from .constraints import PlaneSide, SegmentConstraint, build_constraint
from .four_line import LambdaSolution, solve_4la, solve_lambda
from .oracle import OracleGrid, oracle_cost, oracle_solve
from .roots import least_absolute_root, real_roots_by_magnitude
from .specific import one_line_candidates, solve_1la, solve_3la

__all__ = [
    "LambdaSolution",
    "OracleGrid",
    "PlaneSide",
    "SegmentConstraint",
    "SolverCandidate",
    "build_constraint",
    "least_absolute_root",
    "one_line_candidates",
    "oracle_cost",
    "oracle_solve",
    "real_roots_by_magnitude",
    "solve_1la",
    "solve_3la",
    "solve_4la",
    "solve_lambda",
]
