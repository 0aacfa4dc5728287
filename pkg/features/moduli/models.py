"""
Data models for the moduli feature.

Points of P¹, 5-tuples, the six multigraphs defining the embedding of M₅
into P⁵, M₅ points and the slot-to-coordinate assignment.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from models.errors import DegenerateParameter, InvalidConfig

# Six 2-regular multigraphs on the pentagon, one per component w0..w5.
# Edges are 1-based vertex pairs; repeated edges are double edges.
GRAPH_TABLE: tuple[tuple[tuple[int, int], ...], ...] = (
    ((1, 2), (2, 3), (3, 4), (4, 5), (1, 5)),
    ((1, 2), (2, 5), (1, 5), (3, 4), (3, 4)),
    ((1, 2), (2, 3), (1, 3), (4, 5), (4, 5)),
    ((2, 3), (3, 4), (2, 4), (1, 5), (1, 5)),
    ((3, 4), (4, 5), (3, 5), (1, 2), (1, 2)),
    ((1, 4), (4, 5), (1, 5), (2, 3), (2, 3)),
)

ALL_PAIRS: tuple[tuple[int, int], ...] = tuple((i, j) for i in range(1, 6) for j in range(i + 1, 6))


@dataclass(frozen=True)
class P1PointPair:
    """Homogeneous coordinates (a : b) of a point of P¹."""
    a: complex
    b: complex

    def __post_init__(self):
        if self.a == 0 and self.b == 0:
            raise DegenerateParameter("(0 : 0) is not a point of P¹")

    @classmethod
    def finite(cls, z: complex) -> P1PointPair:
        return cls(complex(z), 1.0 + 0j)

    @classmethod
    def infinity(cls) -> P1PointPair:
        return cls(1.0 + 0j, 0j)

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b], dtype=complex)


@dataclass(frozen=True)
class Tuple5P1:
    points: tuple[P1PointPair, P1PointPair, P1PointPair, P1PointPair, P1PointPair]

    def __post_init__(self):
        if len(self.points) != 5:
            raise InvalidConfig(f"a 5-tuple needs 5 points, got {len(self.points)}")

    @classmethod
    def from_values(cls, values: Sequence[complex | P1PointPair]) -> Tuple5P1:
        """Build from complex numbers (finite points) or ready-made pairs."""
        pts = tuple(v if isinstance(v, P1PointPair) else P1PointPair.finite(v) for v in values)
        return cls(pts)  # type: ignore[arg-type]

    def as_array(self) -> np.ndarray:
        return np.array([[p.a, p.b] for p in self.points], dtype=complex)


@dataclass(frozen=True)
class M5Point:
    """Homogeneous 6-vector (w0 : … : w5)."""
    w: tuple[complex, complex, complex, complex, complex, complex]

    def __post_init__(self):
        if len(self.w) != 6:
            raise InvalidConfig("an M5 point has six components")

    @classmethod
    def from_array(cls, w: np.ndarray) -> M5Point:
        return cls(tuple(complex(x) for x in np.asarray(w).ravel()))  # type: ignore[arg-type]

    def as_array(self) -> np.ndarray:
        return np.array(self.w, dtype=complex)

    def to_dict(self) -> dict:
        return {"w": [[z.real, z.imag] for z in self.w]}


@dataclass(frozen=True)
class CoordinateAssignment:
    """Component slot and sign for each of t, x1..x5 (in that order)."""
    slots: tuple[int, int, int, int, int, int]
    signs: tuple[int, int, int, int, int, int]

    def coordinates(self, w: np.ndarray) -> np.ndarray:
        """(t, x1, …, x5) from component vectors (last axis of length 6)."""
        w = np.asarray(w, dtype=complex)
        return w[..., list(self.slots)] * np.asarray(self.signs, dtype=float)


@dataclass(frozen=True, order=True)
class LineId:
    """The line L_ij ⊂ M₅ of classes with m_i = m_j (1-based, i < j)."""
    i: int
    j: int

    def __post_init__(self):
        if not (1 <= self.i < self.j <= 5):
            raise InvalidConfig(f"invalid line index ({self.i}, {self.j})")

    @classmethod
    def of(cls, i: int, j: int) -> LineId:
        return cls(min(i, j), max(i, j))

    def __str__(self) -> str:
        return f"L{self.i}{self.j}"


ALL_LINES: tuple[LineId, ...] = tuple(LineId(i, j) for i, j in ALL_PAIRS)
