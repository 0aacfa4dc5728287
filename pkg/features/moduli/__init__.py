"""
Moduli feature — the embedding of M₅ (five points on P¹ up to Möbius
transformations) into P⁵, its quadrics, the lines L_ij and real classes.

Public API:
    from features.moduli import phi, M5Point, LineId, distance_to_line
"""

from features.moduli.calibration import (
    CANONICAL_ASSIGNMENT,
    calibrate_coordinates,
    m5_residual,
    m5_residual_array,
)
from features.moduli.embedding import (
    forgetful_cross_ratios,
    m5_to_tuple,
    mobius_apply,
    phi,
    phi_array,
    phi_edge,
    phi_raw_array,
    subtuple_cross_ratio,
)
from features.moduli.lines import (
    VANISHING_SETS,
    distance_to_line,
    distance_to_line_array,
    is_real_class,
    line_vanishing_set,
    sharing_lines,
)
from features.moduli.models import (
    ALL_LINES,
    ALL_PAIRS,
    GRAPH_TABLE,
    CoordinateAssignment,
    LineId,
    M5Point,
    P1PointPair,
    Tuple5P1,
)

__all__ = [
    "ALL_LINES", "ALL_PAIRS", "CANONICAL_ASSIGNMENT", "CoordinateAssignment", "GRAPH_TABLE",
    "LineId", "M5Point", "P1PointPair", "Tuple5P1", "VANISHING_SETS",
    "calibrate_coordinates", "distance_to_line", "distance_to_line_array",
    "forgetful_cross_ratios", "is_real_class", "line_vanishing_set", "m5_residual",
    "m5_residual_array", "m5_to_tuple", "mobius_apply", "phi", "phi_array", "phi_edge",
    "phi_raw_array", "sharing_lines", "subtuple_cross_ratio",
]
