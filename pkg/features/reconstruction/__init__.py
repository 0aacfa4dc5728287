"""
Reconstruction feature — fibers of the camera over the lines L_ij, sign
resolution, point placement and the n-point equivalence check.

Public API:
    from features.reconstruction import camera_oracle, reconstruct5, verify_equivalence_n
"""

from features.reconstruction.algorithm import intersect_lines, place_chain, search_interpretations
from features.reconstruction.fibers import GridSample, find_all_fibers, find_fiber, refine_fiber
from features.reconstruction.models import (
    CameraOracle,
    DirectionTable,
    EquivalenceReport,
    FiberEntry,
    ReconstructionMode,
    ReconstructionResult,
    SignResolution,
)
from features.reconstruction.nverify import verify_equivalence_n
from features.reconstruction.oracle import camera_oracle, check_oracle, oracle_from_function, oracle_mismatch
from features.reconstruction.reconstruct import reconstruct5
from features.reconstruction.signs import ALGORITHM_PAIRS, resolve_signs

__all__ = [
    "ALGORITHM_PAIRS", "CameraOracle", "DirectionTable", "EquivalenceReport", "FiberEntry",
    "GridSample", "ReconstructionMode", "ReconstructionResult", "SignResolution",
    "camera_oracle", "check_oracle", "find_all_fibers", "find_fiber", "intersect_lines",
    "oracle_from_function", "oracle_mismatch", "place_chain", "reconstruct5", "refine_fiber",
    "resolve_signs", "search_interpretations", "verify_equivalence_n",
]
