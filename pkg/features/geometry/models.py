"""
Data models for the geometry feature.

Points, directions, points of the conic C = {x² + y² + z² = 0}, P¹
parameters, configurations and the transforms fitted between them. All
values are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

import config
from models.errors import DegenerateParameter, InvalidConfig, InvalidDirection


@dataclass(frozen=True)
class Vec3:
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.x, self.y, self.z)):
            raise InvalidConfig(f"non-finite coordinate in {self!r}")

    @classmethod
    def from_array(cls, a: Sequence[float]) -> Vec3:
        return cls(float(a[0]), float(a[1]), float(a[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


@dataclass(frozen=True)
class Direction:
    """A unit vector of S²."""
    v: Vec3

    def __post_init__(self):
        norm = float(np.linalg.norm(self.v.as_array()))
        if abs(norm - 1.0) > config.UNIT_TOL:
            raise InvalidDirection(f"direction has norm {norm!r}", norm=norm)

    @classmethod
    def of(cls, x: float, y: float, z: float) -> Direction:
        return cls(Vec3(x, y, z))

    @classmethod
    def from_array(cls, a: Sequence[float], normalize: bool = False) -> Direction:
        a = np.asarray(a, dtype=float)
        if normalize:
            n = np.linalg.norm(a)
            if n == 0.0:
                raise InvalidDirection("zero vector has no direction")
            a = a / n
        return cls(Vec3.from_array(a))

    def as_array(self) -> np.ndarray:
        return self.v.as_array()

    def __neg__(self) -> Direction:
        return Direction.from_array(-self.as_array())


@dataclass(frozen=True)
class ConicPoint:
    """Homogeneous coordinates (cx : cy : cz), defined up to a complex scalar."""
    cx: complex
    cy: complex
    cz: complex

    def __post_init__(self):
        if self.cx == 0 and self.cy == 0 and self.cz == 0:
            raise InvalidDirection("the zero vector is not a point of P²")

    @classmethod
    def from_array(cls, c: Sequence[complex]) -> ConicPoint:
        return cls(complex(c[0]), complex(c[1]), complex(c[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.cx, self.cy, self.cz], dtype=complex)

    def conic_defect(self) -> float:
        """|cx² + cy² + cz²| relative to the squared Hermitian norm."""
        c = self.as_array()
        return float(abs(np.sum(c * c)) / np.vdot(c, c).real)


@dataclass(frozen=True)
class P1Param:
    """Homogeneous pair (s : t) on P¹."""
    s: complex
    t: complex

    def __post_init__(self):
        if self.s == 0 and self.t == 0:
            raise DegenerateParameter("(0 : 0) is not a point of P¹")

    def antipode(self) -> P1Param:
        """The real structure (s : t) ↦ (−t̄ : s̄)."""
        return P1Param(-complex(self.t).conjugate(), complex(self.s).conjugate())


@dataclass(frozen=True)
class PointConfig:
    """Labeled points in 3-space, n ≥ 4 (5 for the camera pipeline).

    `exact` holds the rational coordinates when the configuration was read
    from exact input; degree computations use it when present. Pod anchor
    sets may repeat a point and are built with `distinct=False`.
    """
    points: tuple[Vec3, ...]
    label: str | None = None
    exact: tuple[tuple[Fraction, Fraction, Fraction], ...] | None = field(default=None, compare=False)
    distinct: bool = field(default=True, compare=False)

    def __post_init__(self):
        if len(self.points) < 4:
            raise InvalidConfig(f"need at least 4 points, got {len(self.points)}")
        if self.exact is not None and len(self.exact) != len(self.points):
            raise InvalidConfig("exact coordinates do not match the points")
        arr = self.array
        diffs = arr[:, None, :] - arr[None, :, :]
        dist = np.linalg.norm(diffs, axis=2)
        diameter = float(dist.max())
        iu = np.triu_indices(len(self.points), k=1)
        if diameter == 0.0:
            raise InvalidConfig("all points coincide")
        if self.distinct and float(dist[iu].min()) <= config.UNIT_TOL * diameter:
            raise InvalidConfig("points must be pairwise distinct")

    @classmethod
    def from_array(cls, arr: np.ndarray | Sequence[Sequence[float]], label: str | None = None,
                   distinct: bool = True) -> PointConfig:
        arr = np.asarray(arr, dtype=float)
        return cls(tuple(Vec3.from_array(row) for row in arr), label=label, distinct=distinct)

    @classmethod
    def from_rationals(cls, rows: Sequence[Sequence[Fraction | int | str]], label: str | None = None,
                       distinct: bool = True) -> PointConfig:
        exact = tuple(tuple(Fraction(c) for c in row) for row in rows)
        points = tuple(Vec3(float(r[0]), float(r[1]), float(r[2])) for r in exact)
        return cls(points, label=label, exact=exact, distinct=distinct)  # type: ignore[arg-type]

    @cached_property
    def array(self) -> np.ndarray:
        return np.array([[p.x, p.y, p.z] for p in self.points], dtype=float)

    @property
    def n(self) -> int:
        return len(self.points)

    @cached_property
    def diameter(self) -> float:
        arr = self.array
        return float(np.linalg.norm(arr[:, None, :] - arr[None, :, :], axis=2).max())

    def subset(self, indices: Sequence[int]) -> PointConfig:
        exact = tuple(self.exact[i] for i in indices) if self.exact is not None else None
        return PointConfig(tuple(self.points[i] for i in indices), label=self.label, exact=exact,
                           distinct=self.distinct)


class ConfigTag(str, Enum):
    SPATIAL_GENERIC = "SpatialGeneric"
    SPATIAL_FOUR_COPLANAR = "SpatialFourCoplanar"
    SPATIAL_THREE_COLLINEAR = "SpatialThreeCollinear"
    PLANAR_GENERIC = "PlanarGeneric"
    PLANAR_THREE_COLLINEAR = "PlanarThreeCollinear"
    PLANAR_THREE_PLUS_THREE = "PlanarThreePlusThree"
    PLANAR_FOUR_COLLINEAR = "PlanarFourCollinear"
    ALL_COLLINEAR = "AllCollinear"


PLANAR_TAGS = {
    ConfigTag.PLANAR_GENERIC, ConfigTag.PLANAR_THREE_COLLINEAR,
    ConfigTag.PLANAR_THREE_PLUS_THREE, ConfigTag.PLANAR_FOUR_COLLINEAR,
}


@dataclass(frozen=True)
class ConfigClass:
    """Result of `classify`. Indices are 0-based."""
    tag: ConfigTag
    collinear_triples: tuple[tuple[int, int, int], ...] = ()
    collinear_subsets: tuple[tuple[int, ...], ...] = ()
    plane_normal: Direction | None = None
    parallel_splits: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = ()

    @property
    def is_planar(self) -> bool:
        return self.tag in PLANAR_TAGS

    def to_dict(self) -> dict:
        return {
            "tag": self.tag.value,
            "collinear_triples": [list(t) for t in self.collinear_triples],
            "collinear_subsets": [list(s) for s in self.collinear_subsets],
            "plane_normal": self.plane_normal.as_array().tolist() if self.plane_normal else None,
            "parallel_splits": [[list(a), list(b)] for a, b in self.parallel_splits],
        }


@dataclass(frozen=True, eq=False)
class SimilarityTransform:
    """x ↦ scale · Q x + translation. Q may be improper."""
    scale: float
    orthogonal: np.ndarray
    translation: Vec3
    proper: bool

    def apply(self, arr: np.ndarray) -> np.ndarray:
        arr = np.asarray(arr, dtype=float)
        return self.scale * arr @ self.orthogonal.T + self.translation.as_array()

    def to_dict(self) -> dict:
        return {
            "scale": self.scale,
            "orthogonal": self.orthogonal.tolist(),
            "translation": self.translation.as_array().tolist(),
            "proper": self.proper,
        }


@dataclass(frozen=True, eq=False)
class AffinityTransform:
    """2-D affine map between the planes of two coplanar configurations.

    Plane coordinates are taken in the frames (origin, 2×3 orthonormal basis)
    stored alongside, so `apply` maps 3-D points of the source plane into
    3-D points of the target plane.
    """
    linear: np.ndarray
    translation: np.ndarray
    source_origin: np.ndarray
    source_basis: np.ndarray
    target_origin: np.ndarray
    target_basis: np.ndarray

    def apply(self, arr: np.ndarray) -> np.ndarray:
        local = (np.asarray(arr, dtype=float) - self.source_origin) @ self.source_basis.T
        mapped = local @ self.linear.T + self.translation
        return mapped @ self.target_basis + self.target_origin

    def to_dict(self) -> dict:
        return {
            "linear": self.linear.tolist(),
            "translation": self.translation.tolist(),
            "source_frame": {"origin": self.source_origin.tolist(), "basis": self.source_basis.tolist()},
            "target_frame": {"origin": self.target_origin.tolist(), "basis": self.target_basis.tolist()},
        }
