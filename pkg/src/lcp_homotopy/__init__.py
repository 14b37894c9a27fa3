"""Homotopy continuation solver for linear complementarity problems LCP(q, A)."""

from .errors import (
    InstanceError,
    LcpError,
    NoFeasiblePointError,
    NotSymmetricError,
    RankDeficientError,
    SingularMatrixError,
    TooLargeError,
)
from .extract import ExtractionReport, extract, nonsingularity_certificate, residual_system_check
from .homotopy import HomotopyState, HomotopySystem, KktHomotopy, VariantHomotopy, VariantKind, build_system
from .model import (
    LcpInstance,
    LcpSolution,
    LemkeOutcome,
    LemkeStatus,
    brute_force_solutions,
    check_solution,
    compute_w,
    lemke_solve,
    strictly_feasible_point,
)
from .tracer import Status, TracerConfig, TracerResult, trace_path

__version__ = "0.1.0"

__all__ = [
    "ExtractionReport",
    "HomotopyState",
    "HomotopySystem",
    "InstanceError",
    "KktHomotopy",
    "LcpError",
    "LcpInstance",
    "LcpSolution",
    "LemkeOutcome",
    "LemkeStatus",
    "NoFeasiblePointError",
    "NotSymmetricError",
    "RankDeficientError",
    "SingularMatrixError",
    "Status",
    "TooLargeError",
    "TracerConfig",
    "TracerResult",
    "VariantHomotopy",
    "VariantKind",
    "brute_force_solutions",
    "build_system",
    "check_solution",
    "compute_w",
    "extract",
    "lemke_solve",
    "nonsingularity_certificate",
    "residual_system_check",
    "strictly_feasible_point",
    "trace_path",
]
