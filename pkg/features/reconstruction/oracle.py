"""
Camera oracles: construction, validation and pointwise comparison.
"""

from __future__ import annotations

import logging
from functools import partial
from typing import Callable

import numpy as np

import config
from features.camera.evaluate import camera_eval_many
from features.geometry.classify import classify
from features.geometry.models import Direction, PointConfig
from features.moduli.calibration import m5_residual_array
from features.moduli.models import M5Point
from features.reconstruction.models import CameraOracle
from models.errors import DegenerateDirection, PreconditionViolated, ToleranceAmbiguity
from utils.projective import normalize_max, projective_distances
from utils.sphere_grid import seeded_fibonacci_sphere

log = logging.getLogger(__name__)

ORACLE_VALUE_TOL = 1e-8
CONSTANT_TOL = 1e-9
_CHECK_SAMPLES = 16


def camera_oracle(cfg: PointConfig) -> CameraOracle:
    """Oracle backed by the camera of a known 5-point configuration."""
    try:
        hint = classify(cfg)
    except ToleranceAmbiguity:
        hint = None
    return CameraOracle(eval_many=partial(camera_eval_many, cfg), metadata=hint, label=cfg.label)


def oracle_from_function(fn: Callable[[Direction], M5Point], label: str | None = None) -> CameraOracle:
    """Wrap a pointwise camera; DegenerateDirection marks a row as degenerate."""

    def eval_many(directions: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        directions = np.atleast_2d(directions)
        values = np.zeros((len(directions), 6), dtype=complex)
        bad = np.zeros(len(directions), dtype=bool)
        for k, eps in enumerate(directions):
            try:
                values[k] = fn(Direction.from_array(eps, normalize=True)).as_array()
            except DegenerateDirection:
                bad[k] = True
        return normalize_max(values), bad

    return CameraOracle(eval_many=eval_many, label=label)


def _pairwise(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.array([projective_distances(x, y[None, :])[0] for x, y in zip(a, b)])


def is_constant(oracle: CameraOracle, seed: int = config.DEFAULT_SEED) -> bool:
    grid = seeded_fibonacci_sphere(_CHECK_SAMPLES, seed)
    w, bad = oracle.eval_many(grid)
    w = w[~bad]
    if len(w) < 2:
        return True
    return float(np.max(projective_distances(w[0], w[1:]))) <= CONSTANT_TOL


def check_oracle(oracle: CameraOracle, seed: int = config.DEFAULT_SEED) -> dict:
    """Quadric and real-structure defects on a small seeded grid.

    Values at ε and −ε must be complex conjugate up to scale. Raises
    PreconditionViolated when either defect exceeds ORACLE_VALUE_TOL.
    """
    grid = seeded_fibonacci_sphere(_CHECK_SAMPLES, seed)
    w, bad = oracle.eval_many(grid)
    w_neg, bad_neg = oracle.eval_many(-grid)
    keep = ~(bad | bad_neg)
    quadric = float(m5_residual_array(w[keep]).max(initial=0.0))
    real = float(_pairwise(w[keep], np.conj(w_neg[keep])).max(initial=0.0))
    defects = {"quadric_defect": quadric, "real_structure_defect": real}
    if quadric > ORACLE_VALUE_TOL or real > ORACLE_VALUE_TOL:
        raise PreconditionViolated("oracle values are not those of a Möbius camera", **defects)
    return defects


def oracle_mismatch(oracle: CameraOracle, cfg: PointConfig, samples: int = config.ORACLE_CHECK_SAMPLES,
                    seed: int = config.DEFAULT_SEED) -> float:
    """Largest pointwise projective distance between the oracle and the camera of cfg."""
    grid = seeded_fibonacci_sphere(samples, seed + 1)
    w_o, bad_o = oracle.eval_many(grid)
    w_c, bad_c = camera_eval_many(cfg, grid)
    keep = ~(bad_o | bad_c)
    if not keep.any():
        return 1.0
    return float(_pairwise(w_o[keep], w_c[keep]).max())
