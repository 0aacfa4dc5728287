"""
Distance between camera image curves.

Each sample of one image is projected onto the other camera by damped
least squares on the sphere, started from the nearest samples of the other
image. The symmetric distance is the worst projection residual.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

import config
from features.camera.evaluate import camera_eval_many
from features.camera.models import ImageDistance
from features.geometry.classify import collinearity_residual
from features.geometry.models import PointConfig
from models.errors import PreconditionViolated
from utils.parallel import parallel_map
from utils.projective import phase_aligned_residual, projective_distances
from utils.sphere_grid import chart, seeded_fibonacci_sphere, tangent_basis

log = logging.getLogger(__name__)

# Descent stops early once a seed gets this close.
GOOD_ENOUGH = 1e-12
_PENALTY = np.ones(12)


@dataclass(frozen=True)
class _Projection:
    distance: float
    converged: bool


def _check_not_constant(cfg: PointConfig) -> None:
    if collinearity_residual(cfg.array, cfg.diameter) < config.GEOMETRY_TOL:
        raise PreconditionViolated(
            f"{cfg.label or 'configuration'} is collinear; its camera is constant",
        )


def _sampled(cfg: PointConfig, n: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    grid = seeded_fibonacci_sphere(n, seed)
    w, bad = camera_eval_many(cfg, grid)
    return grid[~bad], w[~bad]


def project_onto_camera(target: np.ndarray, cfg: PointConfig, seeds: np.ndarray) -> _Projection:
    """Minimize the projective distance from `target` to the camera of cfg."""
    best = _Projection(distance=1.0, converged=False)
    for start in seeds:
        b1, b2 = tangent_basis(start)

        def residual(uv: np.ndarray, start=start, b1=b1, b2=b2) -> np.ndarray:
            w, bad = camera_eval_many(cfg, chart(start, b1, b2, uv))
            return _PENALTY if bool(bad[0]) else phase_aligned_residual(target, w[0])

        result = least_squares(residual, np.zeros(2), method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15,
                               max_nfev=400)
        distance = float(np.linalg.norm(result.fun))
        if distance < best.distance:
            best = _Projection(distance=distance, converged=bool(result.status > 0) or distance < GOOD_ENOUGH)
        if best.distance < GOOD_ENOUGH:
            break
    return best


def directed_distance(values: np.ndarray, cfg: PointConfig, grid: np.ndarray, grid_values: np.ndarray,
                      seeds_per_sample: int = config.IMAGE_SEEDS_PER_SAMPLE) -> ImageDistance:
    """Largest distance from the given camera values to the image of cfg."""
    k = min(seeds_per_sample, len(grid))

    def one(v: np.ndarray) -> _Projection:
        nearest = np.argsort(projective_distances(v, grid_values))[:k]
        return project_onto_camera(v, cfg, grid[nearest])

    projections = parallel_map(one, list(values))
    if not projections:
        return ImageDistance(distance=0.0, converged=True, samples=0)
    return ImageDistance(
        distance=max(p.distance for p in projections),
        converged=all(p.converged for p in projections),
        samples=len(projections),
    )


def image_distance_report(a: PointConfig, b: PointConfig, n: int = config.IMAGE_SAMPLES,
                          seed: int = config.DEFAULT_SEED) -> ImageDistance:
    """Symmetric distance between the camera images of a and b, with a convergence flag."""
    _check_not_constant(a)
    _check_not_constant(b)
    grid_a, w_a = _sampled(a, n, seed)
    grid_b, w_b = _sampled(b, n, seed)
    forward = directed_distance(w_a, b, grid_b, w_b)
    backward = directed_distance(w_b, a, grid_a, w_a)
    result = ImageDistance(
        distance=max(forward.distance, backward.distance),
        converged=forward.converged and backward.converged,
        samples=forward.samples + backward.samples,
    )
    if not result.converged:
        log.warning("image_distance: descent did not converge everywhere; %.3e is an upper bound",
                    result.distance)
    log.debug("image_distance(%s, %s) = %.3e", a.label or "a", b.label or "b", result.distance)
    return result


def image_distance(a: PointConfig, b: PointConfig, n: int = config.IMAGE_SAMPLES,
                   seed: int = config.DEFAULT_SEED) -> float:
    return image_distance_report(a, b, n=n, seed=seed).distance


def sampled_image_distance(values: np.ndarray, cfg: PointConfig, n: int = config.IMAGE_SAMPLES,
                           seed: int = config.DEFAULT_SEED) -> ImageDistance:
    """One-sided distance from exported camera samples to the camera of cfg.

    A sample file has no evaluable camera behind it, so only the file's
    points are projected.
    """
    _check_not_constant(cfg)
    grid, w = _sampled(cfg, n, seed)
    result = directed_distance(np.asarray(values, dtype=complex), cfg, grid, w)
    if not result.converged:
        log.warning("sampled_image_distance: descent did not converge everywhere")
    return result
