"""
Data models for the reconstruction feature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from features.geometry.models import ConfigClass, Direction, PointConfig
from features.moduli.models import ALL_LINES, LineId, M5Point
from models.errors import DegenerateDirection

# Vectorized camera: (N, 3) unit vectors → ((N, 6) values, (N,) degenerate mask).
EvalMany = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class CameraOracle:
    """An evaluable parametrized camera.

    `metadata` is an optional classification hint; reconstruction only logs it.
    """
    eval_many: EvalMany
    metadata: ConfigClass | None = None
    label: str | None = None

    def eval_vector(self, eps: np.ndarray) -> np.ndarray:
        w, bad = self.eval_many(np.atleast_2d(eps))
        if bool(bad[0]):
            raise DegenerateDirection("the oracle is degenerate at this direction")
        return w[0]

    def eval(self, eps: Direction) -> M5Point:
        return M5Point.from_array(self.eval_vector(eps.as_array()))


@dataclass(frozen=True)
class FiberEntry:
    """Search result for one line L_ij: an unsigned axis, or NotFound."""
    axis: Direction | None
    found: bool
    residual: float
    alternates: tuple[Direction, ...] = ()

    @property
    def candidates(self) -> tuple[Direction, ...]:
        return ((self.axis,) if self.axis is not None else ()) + self.alternates

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "axis": self.axis.as_array().tolist() if self.axis is not None else None,
            "residual": self.residual,
            "alternates": [a.as_array().tolist() for a in self.alternates],
        }


NOT_FOUND = "NotFound"


@dataclass
class DirectionTable:
    entries: dict[LineId, FiberEntry] = field(default_factory=dict)

    def found(self) -> list[LineId]:
        return [l for l in ALL_LINES if l in self.entries and self.entries[l].found]

    def missing(self) -> list[LineId]:
        return [l for l in ALL_LINES if l not in self.entries or not self.entries[l].found]

    def axis(self, l: LineId) -> np.ndarray:
        entry = self.entries[l]
        if entry.axis is None:
            raise KeyError(f"{l} has no axis")
        return entry.axis.as_array()

    def with_axis(self, l: LineId, axis: np.ndarray) -> DirectionTable:
        """Copy with the axis of l replaced and its alternates dropped."""
        entries = dict(self.entries)
        entries[l] = FiberEntry(axis=Direction.from_array(axis, normalize=True), found=True, residual=0.0)
        return DirectionTable(entries)

    def to_dict(self) -> dict:
        return {str(l): (self.entries[l].to_dict() if l in self.entries else NOT_FOUND) for l in ALL_LINES}


class ReconstructionMode(str, Enum):
    DEG10 = "Deg10"
    DEG8 = "Deg8"
    PLANAR5 = "Planar5"
    PLANAR4 = "Planar4"
    PLANAR3 = "Planar3"
    CROSS_RATIO_ONLY = "CrossRatioOnly"


@dataclass(frozen=True)
class SignResolution:
    """Signs s_ij such that s_ij · axis_ij points from point i to point j."""
    assignment: dict[LineId, int]
    residual: float
    reflection_ambiguous: bool = True

    def signed(self, table: DirectionTable) -> dict[LineId, np.ndarray]:
        return {l: s * table.axis(l) for l, s in self.assignment.items()}

    def flipped(self) -> SignResolution:
        return SignResolution({l: -s for l, s in self.assignment.items()}, self.residual,
                              self.reflection_ambiguous)


@dataclass
class ReconstructionResult:
    """A recovered configuration, or the cross ratio when four points are aligned.

    `camera_equivalent_only` marks results that reproduce the camera but need
    not be similar (or affine) to the source: with two collinear triples the
    fibers do not tell which points sit on which triple.
    """
    config: PointConfig | None
    sign_assignment: dict[LineId, int]
    intersection_residual: float
    mode: ReconstructionMode
    cross_ratio: complex | None = None
    cross_ratio_indices: tuple[int, ...] | None = None
    oracle_mismatch: float | None = None
    reflection_ambiguous: bool = True
    camera_equivalent_only: bool = False
    table: DirectionTable | None = None
    steps: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "config": self.config.array.tolist() if self.config is not None else None,
            "sign_assignment": {str(l): s for l, s in sorted(self.sign_assignment.items())},
            "intersection_residual": self.intersection_residual,
            "oracle_mismatch": self.oracle_mismatch,
            "reflection_ambiguous": self.reflection_ambiguous,
            "camera_equivalent_only": self.camera_equivalent_only,
            "cross_ratio": ([self.cross_ratio.real, self.cross_ratio.imag]
                            if self.cross_ratio is not None else None),
            "cross_ratio_indices": list(self.cross_ratio_indices) if self.cross_ratio_indices else None,
            "directions": self.table.to_dict() if self.table is not None else None,
            "steps": self.steps,
        }


@dataclass
class SubtupleCheck:
    index: int
    distance: float
    converged: bool


@dataclass
class EquivalenceReport:
    """Outcome of comparing two n-point configurations through 5-point cameras."""
    n: int
    planar: bool
    anchor: tuple[int, ...]
    subtuples: list[SubtupleCheck]
    fit_kind: str
    fit_residual: float
    transform: dict | None
    equivalent: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "planar": self.planar,
            "anchor": list(self.anchor),
            "subtuples": [{"index": s.index, "distance": s.distance, "converged": s.converged}
                          for s in self.subtuples],
            "fit": {"kind": self.fit_kind, "residual": self.fit_residual, "transform": self.transform},
            "equivalent": self.equivalent,
        }
