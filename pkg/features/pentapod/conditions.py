"""
Geometric conditions that every pod of mobility ≥ 2 satisfies.

  (a) platform and base are similar
  (b) both are planar and affinely equivalent
  (c) m platform anchors are collinear and the other base anchors coincide
      (or the same with platform and base interchanged)
  (d) the same index split puts platform and base anchors on two pairs of
      parallel lines

Residuals are relative to the diameter of the configuration they measure,
so every check is invariant under rigid motions of either side.
"""

from __future__ import annotations

import logging
from itertools import combinations

import numpy as np

import config
from features.geometry.classify import collinearity_residual, is_coplanar, line_direction, parallel_residual
from features.geometry.fitting import fit_affinity, fit_similarity
from features.geometry.models import PointConfig
from features.pentapod.models import (
    AffinityCondition,
    CollinearCoincidentCondition,
    ParallelLinesCondition,
    Pentapod,
    SimilarityCondition,
)
from models.errors import DegenerateFit, NotPlanar

log = logging.getLogger(__name__)


def _tol(tol: float | None) -> float:
    return config.CONDITION_TOL if tol is None else tol


# ── (a) similarity ───────────────────────────────────────────────────

def check_condition_a(pp: Pentapod, tol: float | None = None) -> SimilarityCondition:
    tol = _tol(tol)
    try:
        transform, residual = fit_similarity(pp.platform, pp.base)
    except DegenerateFit as e:
        log.debug("condition (a): %s", e.message)
        return SimilarityCondition(holds=False, residual=None)
    return SimilarityCondition(holds=residual <= tol, residual=residual, transform=transform)


# ── (b) planar affinity ──────────────────────────────────────────────

def check_condition_b(pp: Pentapod, tol: float | None = None) -> AffinityCondition:
    tol = _tol(tol)
    if not (is_coplanar(pp.platform, tol) and is_coplanar(pp.base, tol)):
        return AffinityCondition(holds=False, residual=None, coplanar=False)
    try:
        transform, residual = fit_affinity(pp.platform, pp.base, tol)
    except (DegenerateFit, NotPlanar) as e:
        log.debug("condition (b): %s", e.message)
        return AffinityCondition(holds=False, residual=None, coplanar=True)
    return AffinityCondition(holds=residual <= tol, residual=residual, transform=transform, coplanar=True)


# ── (c) collinear platform part, coincident base part ────────────────

def coincidence_residual(arr: np.ndarray, diameter: float) -> float:
    """Largest distance of a point from the centroid, relative to `diameter`."""
    if len(arr) <= 1:
        return 0.0
    return float(np.linalg.norm(arr - arr.mean(axis=0), axis=1).max() / diameter)


def _collinear_coincident(platform: PointConfig, base: PointConfig,
                          group: tuple[int, ...], rest: tuple[int, ...]) -> float:
    return max(
        collinearity_residual(platform.array[list(group)], platform.diameter),
        coincidence_residual(base.array[list(rest)], base.diameter),
    )


def check_condition_c(pp: Pentapod, tol: float | None = None) -> CollinearCoincidentCondition:
    """First witness over (interchange, m descending, subsets in lexicographic order).

    The witness permutation lists the collinear indices first, then the
    coincident ones (0-based, as given in the input).
    """
    tol = _tol(tol)
    n = pp.n
    best: CollinearCoincidentCondition | None = None
    for swapped, pod in ((False, pp), (True, pp.swapped())):
        for m in range(n, 0, -1):
            for group in combinations(range(n), m):
                rest = tuple(k for k in range(n) if k not in group)
                residual = _collinear_coincident(pod.platform, pod.base, group, rest)
                candidate = CollinearCoincidentCondition(
                    holds=residual <= tol, residual=residual, m=m,
                    index_permutation=group + rest, swapped=swapped,
                )
                if candidate.holds:
                    log.debug("condition (c): m=%d permutation %s swapped=%s", m, group + rest, swapped)
                    return candidate
                if best is None or residual < best.residual:  # type: ignore[operator]
                    best = candidate
    assert best is not None
    return CollinearCoincidentCondition(holds=False, residual=best.residual)


# ── (d) two pairs of parallel lines ──────────────────────────────────

def _line(arr: np.ndarray, diameter: float, tol: float) -> tuple[float, np.ndarray | None]:
    """Collinearity residual and axis of a group; no axis when the group is one point."""
    if coincidence_residual(arr, diameter) <= tol:
        return 0.0, None
    return collinearity_residual(arr, diameter), line_direction(arr)


def _split(cfg: PointConfig, group: tuple[int, ...], rest: tuple[int, ...],
           tol: float) -> tuple[float, dict]:
    arr, diameter = cfg.array, cfg.diameter
    r1, u = _line(arr[list(group)], diameter, tol)
    r2, v = _line(arr[list(rest)], diameter, tol)
    parallel = parallel_residual(u, v) if u is not None and v is not None else 0.0
    direction = u if u is not None else v
    lines = {
        "direction": direction.tolist() if direction is not None else None,
        "through": [arr[list(group)].mean(axis=0).tolist(), arr[list(rest)].mean(axis=0).tolist()],
    }
    return max(r1, r2, parallel), lines


def index_splits(n: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Splits into two groups of at least two, larger group first, each listed once."""
    splits = []
    for m in range((n + 1) // 2, n - 1):
        for group in combinations(range(n), m):
            rest = tuple(k for k in range(n) if k not in group)
            if m == n - m and rest < group:
                continue
            splits.append((group, rest))
    return splits


def check_condition_d(pp: Pentapod, tol: float | None = None) -> ParallelLinesCondition:
    tol = _tol(tol)
    best_residual: float | None = None
    for group, rest in index_splits(pp.n):
        r_platform, l_platform = _split(pp.platform, group, rest, tol)
        r_base, l_base = _split(pp.base, group, rest, tol)
        residual = max(r_platform, r_base)
        if residual <= tol:
            log.debug("condition (d): split %s | %s", group, rest)
            return ParallelLinesCondition(
                holds=True, residual=residual, partition=(group, rest),
                lines={"platform": l_platform, "base": l_base},
            )
        if best_residual is None or residual < best_residual:
            best_residual = residual
    return ParallelLinesCondition(holds=False, residual=best_residual)
