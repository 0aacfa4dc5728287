"""
Coordinate calibration for the M₅ quadrics

    x_{i−2} x_{i+2} = t·x_i + t²      (i = 1..5, indices mod 5).

Which graph component plays t and which plays each x_i is found by search:
slot permutations and sign patterns are tried in a fixed order until the
quadrics vanish on seeded random φ-images.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from itertools import permutations, product

import numpy as np

import config
from features.moduli.embedding import phi_array
from features.moduli.models import CoordinateAssignment, M5Point
from models.errors import CalibrationFailure
from utils.projective import normalize_max

log = logging.getLogger(__name__)

# Result of calibrate_coordinates() on GRAPH_TABLE: t = w0 and x_i = w_i,
# no sign changes. Guarded by tests/test_moduli.py.
CANONICAL_ASSIGNMENT = CoordinateAssignment(slots=(0, 1, 2, 3, 4, 5), signs=(1, 1, 1, 1, 1, 1))

_CALIBRATION_SEED = 20140901


def quadric_residuals(coords: np.ndarray) -> np.ndarray:
    """|x_{i−2} x_{i+2} − t x_i − t²| for i = 1..5, over the last axis."""
    t = coords[..., 0]
    x = coords[..., 1:]
    out = []
    for i in range(5):
        lhs = x[..., (i - 2) % 5] * x[..., (i + 2) % 5]
        out.append(np.abs(lhs - t * x[..., i] - t * t))
    return np.stack(out, axis=-1)


def m5_residual(p: M5Point | np.ndarray, asg: CoordinateAssignment = CANONICAL_ASSIGNMENT) -> float:
    """Largest quadric defect of p (renormalized) under `asg`."""
    w = p.as_array() if isinstance(p, M5Point) else np.asarray(p, dtype=complex)
    coords = asg.coordinates(normalize_max(w))
    return float(quadric_residuals(coords).max())


def m5_residual_array(w: np.ndarray, asg: CoordinateAssignment = CANONICAL_ASSIGNMENT) -> np.ndarray:
    """Row-wise m5_residual for an (N, 6) array."""
    coords = asg.coordinates(normalize_max(w))
    return quadric_residuals(coords).max(axis=-1)


def random_tuples(rng: np.random.Generator, count: int) -> np.ndarray:
    """(count, 5, 2) random homogeneous pairs, generic with probability one."""
    shape = (count, 5, 2)
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


@lru_cache(maxsize=1)
def calibrate_coordinates() -> CoordinateAssignment:
    """Search slot permutations and signs; cached after the first call."""
    rng = np.random.default_rng(_CALIBRATION_SEED)
    w, outside = phi_array(random_tuples(rng, config.CALIBRATION_SAMPLES))
    w = w[~outside]
    tried = 0
    for slots in permutations(range(6)):
        for signs in product((1, -1), repeat=6):
            tried += 1
            asg = CoordinateAssignment(slots=slots, signs=signs)  # type: ignore[arg-type]
            if float(m5_residual_array(w, asg).max()) <= config.CALIBRATION_TOL:
                log.info("Calibrated M5 coordinates after %d candidates: slots=%s signs=%s",
                         tried, slots, signs)
                return asg
    raise CalibrationFailure(f"no assignment out of {tried} satisfies the quadrics; check GRAPH_TABLE")
