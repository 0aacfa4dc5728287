"""
Deterministic direction grids on the unit sphere.

Spherical Fibonacci lattice (offset by half a step so the poles are never
hit exactly) rotated by a seeded random rotation.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial.transform import Rotation

GOLDEN_RATIO = (1.0 + 5.0 ** 0.5) / 2.0


def fibonacci_sphere(n: int) -> np.ndarray:
    """Return an (n, 3) array of quasi-uniform unit vectors."""
    if n < 1:
        raise ValueError("grid size must be positive")
    indices = np.arange(n, dtype=float) + 0.5
    polar = np.arccos(1.0 - 2.0 * indices / n)
    azimuth = 2.0 * np.pi * indices / GOLDEN_RATIO
    return np.column_stack((
        np.cos(azimuth) * np.sin(polar),
        np.sin(azimuth) * np.sin(polar),
        np.cos(polar),
    ))


def seeded_fibonacci_sphere(n: int, seed: int = 0) -> np.ndarray:
    """Fibonacci grid rotated by `Rotation.random(random_state=seed)`."""
    rotation = Rotation.random(random_state=seed)
    grid = rotation.apply(fibonacci_sphere(n))
    return grid / np.linalg.norm(grid, axis=1, keepdims=True)


def tangent_basis(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Two orthonormal vectors spanning the tangent plane at unit `v`."""
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(v)))] = 1.0
    b1 = np.cross(v, axis)
    b1 /= np.linalg.norm(b1)
    b2 = np.cross(v, b1)
    return b1, b2


def chart(v: np.ndarray, b1: np.ndarray, b2: np.ndarray, uv: np.ndarray) -> np.ndarray:
    """Point of the sphere at tangent coordinates `uv` around `v`."""
    p = v + uv[0] * b1 + uv[1] * b2
    return p / np.linalg.norm(p)


def axis_angle(u: np.ndarray, v: np.ndarray) -> float:
    """Angle between the unsigned axes spanned by unit vectors u and v."""
    c = min(1.0, abs(float(np.dot(u, v))))
    s = np.linalg.norm(np.cross(u, v))
    return float(np.arctan2(s, c))
