"""
Cross ratio of four points of the Riemann sphere and the Möbius action.

Points are complex numbers or `INFINITY`. Internally every value becomes a
homogeneous pair (z : 1) or (1 : 0) and the cross ratio is

    ([13][24]) / ([14][23]),   [ij] = a_i b_j − a_j b_i,

which is never 0/0 when at least three values are distinct. The formula's
limit fixes the coincidence convention: m1 = m3 or m2 = m4 gives 0,
m1 = m4 or m2 = m3 gives INFINITY, m1 = m2 or m3 = m4 gives 1.
"""

from __future__ import annotations

import cmath
import math
from typing import Sequence

import numpy as np

from models.errors import DegenerateTuple

INFINITY = math.inf

_COINCIDENCE_TOL = 1e-14


def is_infinite(z: complex | float) -> bool:
    return cmath.isinf(complex(z))


def to_homogeneous(z: complex | float) -> tuple[complex, complex]:
    if is_infinite(z):
        return 1.0 + 0j, 0j
    return complex(z), 1.0 + 0j


def from_homogeneous(a: complex, b: complex) -> complex | float:
    if abs(b) <= _COINCIDENCE_TOL * abs(a):
        return INFINITY
    return a / b


def bracket(p: tuple[complex, complex], q: tuple[complex, complex]) -> complex:
    return p[0] * q[1] - q[0] * p[1]


def _coincide(p: tuple[complex, complex], q: tuple[complex, complex]) -> bool:
    scale = max(abs(p[0]), abs(p[1])) * max(abs(q[0]), abs(q[1]))
    return abs(bracket(p, q)) <= _COINCIDENCE_TOL * scale


def cross_ratio(m: Sequence[complex | float]) -> complex | float:
    """((m1−m3)(m2−m4)) / ((m1−m4)(m2−m3)) on the Riemann sphere."""
    if len(m) != 4:
        raise ValueError("cross ratio takes exactly four values")
    h = [to_homogeneous(z) for z in m]
    distinct: list[tuple[complex, complex]] = []
    for p in h:
        if not any(_coincide(p, q) for q in distinct):
            distinct.append(p)
    if len(distinct) < 3:
        raise DegenerateTuple(f"only {len(distinct)} distinct values among {list(m)!r}")
    num = bracket(h[0], h[2]) * bracket(h[1], h[3])
    den = bracket(h[0], h[3]) * bracket(h[1], h[2])
    return from_homogeneous(num, den)


def mobius(g: np.ndarray, z: complex | float) -> complex | float:
    """Apply the 2×2 matrix g to z: (az + b)/(cz + d)."""
    a, b = to_homogeneous(z)
    g = np.asarray(g, dtype=complex)
    return from_homogeneous(g[0, 0] * a + g[0, 1] * b, g[1, 0] * a + g[1, 1] * b)
