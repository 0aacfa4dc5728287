"""
Equivalence of n-point configurations (n ≥ 5) through 5-point cameras.

Four anchor points are shared by every 5-subtuple (anchor, k). If each
subtuple pair has the same camera image, one similarity (spatial) or
affinity (planar) should carry the whole of a onto b.
"""

from __future__ import annotations

import logging
from itertools import combinations

import config
from features.camera.compare import image_distance_report
from features.geometry.classify import collinearity_residual, is_coplanar, planarity_residual
from features.geometry.fitting import fit_affinity, fit_similarity
from features.geometry.models import PointConfig
from features.reconstruction.models import EquivalenceReport, SubtupleCheck
from models.errors import DegenerateFit, NotPlanar, PreconditionViolated

log = logging.getLogger(__name__)

FIT_TOL = 1e-9


def _check_shape(a: PointConfig, b: PointConfig) -> None:
    if a.n != b.n:
        raise PreconditionViolated(f"configurations differ in size: {a.n} vs {b.n}")
    if a.n < 5:
        raise PreconditionViolated(f"need at least 5 points, got {a.n}")
    for cfg in (a, b):
        for subset in combinations(range(cfg.n), cfg.n - 1):
            if collinearity_residual(cfg.array[list(subset)], cfg.diameter) < config.GEOMETRY_TOL:
                raise PreconditionViolated(f"{cfg.n - 1} points of {cfg.label or 'a configuration'} are collinear")


def _good_anchor(cfg: PointConfig, quad: tuple[int, ...], planar: bool, strict: bool) -> bool:
    arr, diameter = cfg.array, cfg.diameter
    if not planar:
        return planarity_residual(arr[list(quad)], diameter) >= config.GEOMETRY_TOL
    if strict:
        return all(collinearity_residual(arr[list(t)], diameter) >= config.GEOMETRY_TOL
                   for t in combinations(quad, 3))
    return collinearity_residual(arr[list(quad)], diameter) >= config.GEOMETRY_TOL


def select_anchor(a: PointConfig, b: PointConfig, planar: bool) -> tuple[int, ...]:
    """First quadruple (lexicographic) good in both configurations.

    Spatial: not coplanar. Planar: no collinear triple if possible, else not
    all four collinear.
    """
    for strict in ((True, False) if planar else (True,)):
        for quad in combinations(range(a.n), 4):
            if _good_anchor(a, quad, planar, strict) and _good_anchor(b, quad, planar, strict):
                return quad
    raise PreconditionViolated("no anchor quadruple is available in both configurations")


def verify_equivalence_n(a: PointConfig, b: PointConfig, n_samples: int = config.IMAGE_SAMPLES,
                         seed: int = config.DEFAULT_SEED,
                         tol: float = config.CAMERA_EQUAL_TOL) -> EquivalenceReport:
    """Compare all 5-subtuple camera images and fit one global transform."""
    _check_shape(a, b)
    planar = is_coplanar(a) and is_coplanar(b)
    anchor = select_anchor(a, b, planar)
    others = [k for k in range(a.n) if k not in anchor]

    def check(k: int) -> SubtupleCheck:
        idx = list(anchor) + [k]
        result = image_distance_report(a.subset(idx), b.subset(idx), n=n_samples, seed=seed)
        return SubtupleCheck(index=k, distance=result.distance, converged=result.converged)

    subtuples = [check(k) for k in others]

    transform = None
    try:
        if planar:
            fitted, residual = fit_affinity(a, b)
            kind = "affinity"
        else:
            fitted, residual = fit_similarity(a, b)
            kind = "similarity"
        transform = fitted.to_dict()
    except (DegenerateFit, NotPlanar) as e:
        kind, residual = ("affinity" if planar else "similarity"), float("inf")
        log.warning("nverify: global fit failed: %s", e.message)

    equivalent = all(s.distance <= tol for s in subtuples) and residual <= FIT_TOL
    log.info("nverify: n=%d anchor=%s max subtuple distance %.2e, %s residual %.2e",
             a.n, anchor, max(s.distance for s in subtuples), kind, residual)
    return EquivalenceReport(
        n=a.n, planar=planar, anchor=anchor, subtuples=subtuples,
        fit_kind=kind, fit_residual=residual, transform=transform, equivalent=equivalent,
    )
