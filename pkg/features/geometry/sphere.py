"""
The direction sphere S² and its conic model C = {x² + y² + z² = 0} ⊂ P²(ℂ).

A direction ε is sent to ε′ + iε″ where (ε, ε′, ε″) is a right-handed
orthonormal frame. The antipodal map on S² becomes complex conjugation on C,
and projecting a point a along ε is the bilinear product ⟨c, a⟩.
"""

from __future__ import annotations

import logging

import numpy as np

import config
from features.geometry.models import ConicPoint, Direction, P1Param, Vec3
from models.errors import InvalidDirection, NotOnConic

log = logging.getLogger(__name__)

SQRT2 = np.sqrt(2.0)


def gamma_array(eps: np.ndarray) -> np.ndarray:
    """Vectorized gamma over an (N, 3) array of unit vectors -> (N, 3) complex.

    ε′ ∝ ε × e_k with e_k the coordinate axis least aligned with ε; ε″ = ε × ε′.
    Rows have Hermitian norm √2.
    """
    eps = np.atleast_2d(np.asarray(eps, dtype=float))
    k = np.argmin(np.abs(eps), axis=1)
    axes = np.zeros_like(eps)
    axes[np.arange(len(eps)), k] = 1.0
    e1 = np.cross(eps, axes)
    e1 /= np.linalg.norm(e1, axis=1, keepdims=True)
    e2 = np.cross(eps, e1)
    return e1 + 1j * e2


def gamma(eps: Direction) -> ConicPoint:
    v = eps.as_array()
    if abs(np.linalg.norm(v) - 1.0) > config.UNIT_TOL:
        raise InvalidDirection("gamma needs a unit vector")
    return ConicPoint.from_array(gamma_array(v)[0])


def gamma_inverse(c: ConicPoint) -> Direction:
    """Inverse of `gamma`; independent of the representative's phase."""
    if c.conic_defect() > config.CONIC_TOL:
        raise NotOnConic(f"point is off the conic (defect {c.conic_defect():.3e})",
                         defect=c.conic_defect())
    v = c.as_array()
    v = v * (SQRT2 / np.linalg.norm(v))
    eps = np.cross(v.real, v.imag)
    return Direction.from_array(eps, normalize=True)


def conic_param(p: P1Param) -> ConicPoint:
    """(s : t) ↦ (s² − t² : i(s² + t²) : 2st)."""
    s, t = complex(p.s), complex(p.t)
    return ConicPoint(s * s - t * t, 1j * (s * s + t * t), 2 * s * t)


def direction_of_param(p: P1Param) -> Direction:
    return gamma_inverse(conic_param(p))


def param_of_direction(eps: Direction) -> P1Param:
    """A parameter (s : t) whose conic point is gamma(eps).

    Solves s² = (cx − i·cy)/2·λ, t² = −(cx + i·cy)/2·λ, st = cz/2·λ for one
    consistent choice of square roots.
    """
    c = gamma(eps).as_array()
    s2 = (c[0] - 1j * c[1]) / 2.0
    t2 = -(c[0] + 1j * c[1]) / 2.0
    if abs(s2) >= abs(t2):
        s = np.sqrt(s2)
        t = c[2] / (2.0 * s)
    else:
        t = np.sqrt(t2)
        s = c[2] / (2.0 * t)
    return P1Param(complex(s), complex(t))


def project(eps: Direction, a: Vec3) -> complex:
    """⟨gamma(eps), a⟩ with gamma normalized to Hermitian norm √2."""
    c = gamma_array(eps.as_array())[0]
    return complex(np.dot(c, a.as_array()))
