"""
Camera evaluation: pointwise, vectorized over direction grids, through the
P¹ parametrization, and sampled into an image curve.
"""

from __future__ import annotations

import csv
import logging
from itertools import combinations
from pathlib import Path

import numpy as np

import config
from features.camera.forms import build_forms, exact_param
from features.camera.models import CameraSample, EvalMode, ExactM5Point, ImageCurve
from features.geometry.classify import classify, collinearity_residual, line_direction
from features.geometry.models import Direction, P1Param, PointConfig
from features.geometry.sphere import conic_param, gamma_array, param_of_direction
from features.moduli.embedding import phi_array, phi_raw_array
from features.moduli.models import M5Point
from models.errors import DegenerateDirection, DegenerateParameter, InvalidConfig
from utils.parallel import parallel_map
from utils.projective import normalize_max
from utils.sphere_grid import seeded_fibonacci_sphere

log = logging.getLogger(__name__)

CSV_HEADER = (
    ["s_re", "s_im", "t_re", "t_im", "dir_x", "dir_y", "dir_z"]
    + [f"w{k}_{part}" for k in range(6) for part in ("re", "im")]
)

_CHUNK = 2048


def _require_five(cfg: PointConfig) -> None:
    if cfg.n != 5:
        raise InvalidConfig(f"the camera needs exactly 5 points, got {cfg.n}")


def _pairs_from_conic(c: np.ndarray, points: np.ndarray) -> np.ndarray:
    proj = np.atleast_2d(c) @ points.T
    return np.stack([proj, np.ones_like(proj)], axis=-1)


def camera_eval_many(cfg: PointConfig, directions: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Camera values for an (N, 3) array of unit vectors.

    Returns (w of shape (N, 6), boolean mask of degenerate directions).
    Large grids are split into chunks evaluated on the worker pool.
    """
    _require_five(cfg)
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    points = cfg.array - cfg.array.mean(axis=0)
    if len(directions) <= _CHUNK:
        return phi_array(_pairs_from_conic(gamma_array(directions), points))
    chunks = [directions[k:k + _CHUNK] for k in range(0, len(directions), _CHUNK)]
    parts = parallel_map(lambda d: phi_array(_pairs_from_conic(gamma_array(d), points)), chunks)
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def camera_vector(cfg: PointConfig, eps: np.ndarray) -> np.ndarray:
    """Single-direction camera value as a normalized complex 6-vector."""
    w, degenerate = camera_eval_many(cfg, eps)
    if bool(degenerate[0]):
        raise DegenerateDirection("three points project to the same image point")
    return w[0]


def camera_eval(cfg: PointConfig, eps: Direction) -> M5Point:
    """The Möbius picture of cfg along eps as a point of M₅."""
    return M5Point.from_array(camera_vector(cfg, eps.as_array()))


def camera_eval_param(cfg: PointConfig, p: P1Param,
                      mode: EvalMode | str = EvalMode.FLOAT) -> M5Point | ExactM5Point:
    """Camera through the conic parametrization.

    Float mode evaluates the raw degree-10 forms; exact mode evaluates the
    forms after the common factor is divided out, which is defined at every
    parameter.
    """
    _require_five(cfg)
    mode = EvalMode(mode)
    if mode is EvalMode.EXACT:
        forms = build_forms(cfg)
        s, t = exact_param(p)
        return ExactM5Point(forms.evaluate_exact(s, t))

    c = conic_param(p).as_array()
    w, reference = phi_raw_array(_pairs_from_conic(c, cfg.array)[0])
    if float(np.max(np.abs(w))) <= config.NOT_IN_U_TOL * float(reference):
        raise DegenerateParameter("all six forms vanish at this parameter")
    return M5Point.from_array(normalize_max(w))


def degenerate_directions(cfg: PointConfig, tol: float | None = None) -> list[np.ndarray]:
    """Axes along which three points of cfg project to one image point."""
    tol = config.GEOMETRY_TOL if tol is None else tol
    arr, diameter = cfg.array, cfg.diameter
    axes: list[np.ndarray] = []
    for triple in combinations(range(cfg.n), 3):
        sub = arr[list(triple)]
        if collinearity_residual(sub, diameter) < tol:
            axis = line_direction(sub)
            if not any(abs(abs(float(np.dot(axis, a))) - 1.0) < 1e-12 for a in axes):
                axes.append(axis)
    return axes


def camera_sample(cfg: PointConfig, n: int, seed: int = config.DEFAULT_SEED) -> ImageCurve:
    """Sample the image over a seeded Fibonacci grid, skipping degenerate directions."""
    from features.camera.degree import predicted_degree

    if n < 1:
        raise InvalidConfig("sample count must be positive")
    cls = classify(cfg)
    grid = seeded_fibonacci_sphere(n, seed)
    w, degenerate = camera_eval_many(cfg, grid)
    samples = []
    for eps, value, bad in zip(grid, w, degenerate):
        if bad:
            continue
        direction = Direction.from_array(eps, normalize=True)
        samples.append(CameraSample(
            param=param_of_direction(direction),
            direction=direction,
            value=M5Point.from_array(value),
        ))
    skipped = int(degenerate.sum())
    if skipped:
        log.info("camera_sample: skipped %d degenerate directions", skipped)
    return ImageCurve(samples=tuple(samples), config_class=cls,
                      claimed_degree=predicted_degree(cls), skipped=skipped)


# ── CSV export ───────────────────────────────────────────────────────

def image_rows(curve: ImageCurve) -> list[list[float]]:
    rows = []
    for sample in curve.samples:
        s, t = complex(sample.param.s), complex(sample.param.t)
        row = [s.real, s.imag, t.real, t.imag, *sample.direction.as_array().tolist()]
        for z in sample.value.w:
            row.extend([z.real, z.imag])
        rows.append(row)
    return rows


def image_to_csv(curve: ImageCurve, path: Path) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_HEADER)
        for row in image_rows(curve):
            writer.writerow([repr(float(x)) for x in row])


def image_from_csv(path: Path) -> tuple[np.ndarray, np.ndarray]:
    """(directions (N, 3), values (N, 6)) from an exported sample file."""
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        if header != CSV_HEADER:
            raise InvalidConfig(f"unexpected CSV header in {path}")
        data = np.array([[float(x) for x in row] for row in reader if row], dtype=float)
    if data.size == 0:
        raise InvalidConfig(f"no samples in {path}")
    directions = data[:, 4:7]
    values = data[:, 7::2] + 1j * data[:, 8::2]
    return directions, values
