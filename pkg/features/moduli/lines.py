"""
The ten lines L_ij ⊂ M₅ and the real structure.
"""

from __future__ import annotations

import numpy as np

from features.moduli.models import ALL_LINES, GRAPH_TABLE, LineId, M5Point
from utils.projective import projective_distance


def line_vanishing_set(l: LineId) -> frozenset[int]:
    """Components whose graph contains the edge {i, j}."""
    edge = (l.i, l.j)
    return frozenset(k for k, graph in enumerate(GRAPH_TABLE) if edge in graph)


VANISHING_SETS: dict[LineId, frozenset[int]] = {l: line_vanishing_set(l) for l in ALL_LINES}


def distance_to_line(p: M5Point | np.ndarray, l: LineId) -> float:
    """sqrt(Σ_{k ∈ S_ij} |w_k|²) / ‖w‖.

    Zero on L_ij. For the five lines with a single vanishing component this
    is only a necessary condition.
    """
    w = p.as_array() if isinstance(p, M5Point) else np.asarray(p, dtype=complex)
    idx = sorted(VANISHING_SETS[l])
    return float(np.linalg.norm(w[..., idx]) / np.linalg.norm(w))


def distance_to_line_array(w: np.ndarray, l: LineId) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    idx = sorted(VANISHING_SETS[l])
    return np.linalg.norm(w[:, idx], axis=1) / np.linalg.norm(w, axis=1)


def sharing_lines(l: LineId) -> list[LineId]:
    """Other lines whose vanishing set contains every component of S_l."""
    s = VANISHING_SETS[l]
    return [m for m in ALL_LINES if m != l and s <= VANISHING_SETS[m]]


def is_real_class(p: M5Point, tol: float = 1e-9) -> bool:
    """True iff p is projectively equal to its componentwise conjugate."""
    w = p.as_array()
    return projective_distance(w, np.conj(w)) <= tol
