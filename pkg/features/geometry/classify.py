"""
Configuration classification: collinear subsets, coplanarity and the
parallel-line splits, reduced to one of the eight configuration tags.

Every decision compares a singular value of a centered subset against the
diameter of the whole configuration, so the result is similarity invariant.
"""

from __future__ import annotations

import logging
from itertools import combinations
from typing import Sequence

import numpy as np

import config
from features.geometry.models import ConfigClass, ConfigTag, Direction, PointConfig
from models.errors import ToleranceAmbiguity

log = logging.getLogger(__name__)


# ── Residuals ─────────────────────────────────────────────────────────

def _singular_values(arr: np.ndarray) -> np.ndarray:
    centered = arr - arr.mean(axis=0)
    s = np.linalg.svd(centered, compute_uv=False)
    return np.pad(s, (0, max(0, 3 - len(s))))


def collinearity_residual(arr: np.ndarray, diameter: float) -> float:
    """Second singular value of the centered points over `diameter`."""
    if len(arr) <= 2:
        return 0.0
    return float(_singular_values(arr)[1] / diameter)


def planarity_residual(arr: np.ndarray, diameter: float) -> float:
    if len(arr) <= 3:
        return 0.0
    return float(_singular_values(arr)[2] / diameter)


def line_direction(arr: np.ndarray) -> np.ndarray:
    """Principal axis of a point set (unit vector)."""
    centered = arr - arr.mean(axis=0)
    _, _, vt = np.linalg.svd(centered)
    return vt[0]


def parallel_residual(u: np.ndarray, v: np.ndarray) -> float:
    """|sin| of the angle between two axes."""
    return float(np.linalg.norm(np.cross(u, v)))


def plane_normal(arr: np.ndarray) -> np.ndarray:
    centered = arr - arr.mean(axis=0)
    _, _, vt = np.linalg.svd(centered)
    return vt[2]


# ── Structure detection ──────────────────────────────────────────────

def maximal_collinear_subsets(arr: np.ndarray, diameter: float, tol: float) -> list[tuple[int, ...]]:
    """All maximal subsets of ≥ 3 points lying on a common line."""
    n = len(arr)
    found: set[tuple[int, ...]] = set()
    for triple in combinations(range(n), 3):
        if collinearity_residual(arr[list(triple)], diameter) >= tol:
            continue
        members = list(triple)
        for k in range(n):
            if k in triple:
                continue
            if collinearity_residual(arr[list(triple) + [k]], diameter) < tol:
                members.append(k)
        found.add(tuple(sorted(members)))
    return sorted(found, key=lambda s: (-len(s), s))


def parallel_splits(arr: np.ndarray, diameter: float, tol: float,
                    min_size: int = 2) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Splits of the index set into two collinear groups on parallel lines.

    Each group has at least `min_size` points; the larger group comes first
    (ties broken lexicographically) and each split is listed once.
    """
    n = len(arr)
    splits: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for m in range(max(min_size, (n + 1) // 2), n - min_size + 1):
        for group in combinations(range(n), m):
            rest = tuple(k for k in range(n) if k not in group)
            if m == n - m and rest < group:
                continue
            if split_residual(arr, group, rest, diameter) < tol:
                splits.append((group, rest))
    return splits


def split_residual(arr: np.ndarray, group: Sequence[int], rest: Sequence[int], diameter: float) -> float:
    """Largest of the two collinearity residuals and the parallelism residual."""
    g, r = arr[list(group)], arr[list(rest)]
    residual = max(collinearity_residual(g, diameter), collinearity_residual(r, diameter))
    return max(residual, parallel_residual(line_direction(g), line_direction(r)))


def _tag_for(arr: np.ndarray, diameter: float, tol: float) -> tuple[ConfigTag, list[tuple[int, ...]], bool]:
    n = len(arr)
    lines = maximal_collinear_subsets(arr, diameter, tol)
    if lines and len(lines[0]) == n:
        return ConfigTag.ALL_COLLINEAR, lines, True
    planar = planarity_residual(arr, diameter) < tol
    sizes = sorted((len(s) for s in lines), reverse=True)
    if planar:
        if sizes and sizes[0] >= 4:
            return ConfigTag.PLANAR_FOUR_COLLINEAR, lines, True
        if len(sizes) >= 2:
            return ConfigTag.PLANAR_THREE_PLUS_THREE, lines, True
        if sizes:
            return ConfigTag.PLANAR_THREE_COLLINEAR, lines, True
        return ConfigTag.PLANAR_GENERIC, lines, True
    if sizes:
        return ConfigTag.SPATIAL_THREE_COLLINEAR, lines, False
    for quad in combinations(range(n), 4):
        if planarity_residual(arr[list(quad)], diameter) < tol:
            return ConfigTag.SPATIAL_FOUR_COPLANAR, lines, False
    return ConfigTag.SPATIAL_GENERIC, lines, False


def classify(cfg: PointConfig, tol: float | None = None) -> ConfigClass:
    """Classify a configuration.

    The tag is computed at `tol` and again at `tol * AMBIGUITY_FACTOR`; if the
    two disagree some residual sits inside the band and ToleranceAmbiguity
    is raised with both tags.
    """
    tol = config.GEOMETRY_TOL if tol is None else tol
    arr = cfg.array
    diameter = cfg.diameter
    tag, lines, planar = _tag_for(arr, diameter, tol)
    loose_tag, _, _ = _tag_for(arr, diameter, tol * config.AMBIGUITY_FACTOR)
    if loose_tag != tag:
        log.warning("classification of %s is ambiguous: %s vs %s", cfg.label or "config", tag.value, loose_tag.value)
        raise ToleranceAmbiguity(tag.value, loose_tag.value)

    triples = sorted({t for s in lines for t in combinations(s, 3)})
    normal = None
    if planar and tag != ConfigTag.ALL_COLLINEAR:
        normal = Direction.from_array(plane_normal(arr), normalize=True)
    splits = parallel_splits(arr, diameter, tol) if tag != ConfigTag.ALL_COLLINEAR else []
    return ConfigClass(
        tag=tag,
        collinear_triples=tuple(triples),  # type: ignore[arg-type]
        collinear_subsets=tuple(lines),
        plane_normal=normal,
        parallel_splits=tuple(splits),
    )


def is_coplanar(cfg: PointConfig, tol: float | None = None) -> bool:
    tol = config.GEOMETRY_TOL if tol is None else tol
    return planarity_residual(cfg.array, cfg.diameter) < tol
