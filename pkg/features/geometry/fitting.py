"""
Least-squares similarity and affinity fits between matched configurations.

The similarity fit is the centered cross-covariance SVD (Umeyama) without the
determinant correction, so reflections are fitted rather than excluded and
reported through `proper`.
"""

from __future__ import annotations

import logging

import numpy as np

import config
from features.geometry.classify import planarity_residual
from features.geometry.models import AffinityTransform, PointConfig, SimilarityTransform, Vec3
from models.errors import DegenerateFit, InvalidConfig, NotPlanar

log = logging.getLogger(__name__)


def _as_array(cfg: PointConfig | np.ndarray) -> np.ndarray:
    return cfg.array if isinstance(cfg, PointConfig) else np.asarray(cfg, dtype=float)


def _diameter(arr: np.ndarray) -> float:
    return float(np.linalg.norm(arr[:, None, :] - arr[None, :, :], axis=-1).max())


def _check_lengths(a: np.ndarray, b: np.ndarray, minimum: int) -> None:
    if a.shape != b.shape:
        raise InvalidConfig(f"configurations differ in size: {a.shape} vs {b.shape}")
    if len(a) < minimum:
        raise InvalidConfig(f"need at least {minimum} points to fit")


def fit_similarity(a: PointConfig | np.ndarray, b: PointConfig | np.ndarray) -> tuple[SimilarityTransform, float]:
    """Fit b ≈ s·Q·a + t. Returns (transform, RMS misfit / diameter(b))."""
    x, y = _as_array(a), _as_array(b)
    _check_lengths(x, y, 3)
    n = len(x)
    mx, my = x.mean(axis=0), y.mean(axis=0)
    dx, dy = x - mx, y - my
    var_x = float((dx ** 2).sum() / n)
    if var_x <= 0.0 or var_x < (config.UNIT_TOL * _diameter(x)) ** 2:
        raise DegenerateFit("source points coincide")

    sigma = dy.T @ dx / n
    u, d, vt = np.linalg.svd(sigma)
    q = u @ vt
    scale = float(d.sum() / var_x)
    if scale <= 0.0:
        raise DegenerateFit("target points coincide")
    t = my - scale * q @ mx

    fitted = scale * x @ q.T + t
    diameter = _diameter(y)
    residual = float(np.sqrt(((fitted - y) ** 2).sum(axis=1).mean()) / diameter)
    transform = SimilarityTransform(
        scale=scale, orthogonal=q, translation=Vec3.from_array(t),
        proper=bool(np.linalg.det(q) > 0.0),
    )
    return transform, residual


def plane_frame(arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(origin, 2×3 orthonormal basis) of the best-fit plane."""
    origin = arr.mean(axis=0)
    _, _, vt = np.linalg.svd(arr - origin)
    return origin, vt[:2]


def fit_affinity(a: PointConfig | np.ndarray, b: PointConfig | np.ndarray,
                 tol: float | None = None) -> tuple[AffinityTransform, float]:
    """Fit a planar affine map between two coplanar configurations."""
    tol = config.GEOMETRY_TOL if tol is None else tol
    x, y = _as_array(a), _as_array(b)
    _check_lengths(x, y, 3)
    dia_x, dia_y = _diameter(x), _diameter(y)
    for name, arr, dia in (("source", x, dia_x), ("target", y, dia_y)):
        if planarity_residual(arr, dia) >= tol:
            raise NotPlanar(f"{name} configuration is not coplanar")

    ox, bx = plane_frame(x)
    oy, by = plane_frame(y)
    x2 = (x - ox) @ bx.T
    y2 = (y - oy) @ by.T
    s = np.linalg.svd(x2 - x2.mean(axis=0), compute_uv=False)
    if s[-1] / dia_x < tol:
        raise DegenerateFit("source points are collinear; the affine fit is rank deficient")

    design = np.column_stack([x2, np.ones(len(x2))])
    solution, *_ = np.linalg.lstsq(design, y2, rcond=None)
    linear = solution[:2].T
    translation = solution[2]
    if abs(np.linalg.det(linear)) <= config.UNIT_TOL:
        raise DegenerateFit("fitted linear part is singular")

    fitted = x2 @ linear.T + translation
    residual = float(np.sqrt(((fitted - y2) ** 2).sum(axis=1).mean()) / dia_y)
    off_plane = planarity_residual(y, dia_y)
    transform = AffinityTransform(
        linear=linear, translation=translation,
        source_origin=ox, source_basis=bx, target_origin=oy, target_basis=by,
    )
    return transform, max(residual, off_plane)
