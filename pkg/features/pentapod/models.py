"""
Data models for the pentapod feature.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from features.geometry.models import AffinityTransform, PointConfig, SimilarityTransform
from models.errors import PreconditionViolated

CAVEAT = "necessary condition only: a positive verdict does not imply mobility >= 2"
VERDICT_POSSIBLE = "mobility >= 2 possible"
VERDICT_EXCLUDED = "mobility >= 2 excluded"


@dataclass(frozen=True)
class Pentapod:
    """Platform anchors p_i, base anchors P_i and optional leg lengths.

    Carries n ≥ 5 legs; the classic pentapod is n = 5. Anchor sets are built
    with `distinct=False` because base points may coincide.
    """
    platform: PointConfig
    base: PointConfig
    leg_lengths: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.platform.n != self.base.n:
            raise PreconditionViolated(
                f"platform has {self.platform.n} anchors, base has {self.base.n}",
            )
        if self.platform.n < 5:
            raise PreconditionViolated(
                f"need at least 5 legs, got {self.platform.n}; every pod with fewer legs is mobile",
            )
        if self.leg_lengths is not None:
            if len(self.leg_lengths) != self.platform.n:
                raise PreconditionViolated(
                    f"{len(self.leg_lengths)} leg lengths for {self.platform.n} legs",
                )
            if any(not d > 0.0 for d in self.leg_lengths):
                raise PreconditionViolated("leg lengths must be positive")

    @property
    def n(self) -> int:
        return self.platform.n

    @classmethod
    def from_arrays(cls, platform, base, leg_lengths=None) -> Pentapod:
        return cls(
            platform=PointConfig.from_array(platform, label="platform", distinct=False),
            base=PointConfig.from_array(base, label="base", distinct=False),
            leg_lengths=tuple(float(d) for d in leg_lengths) if leg_lengths is not None else None,
        )

    def swapped(self) -> Pentapod:
        return Pentapod(platform=self.base, base=self.platform, leg_lengths=self.leg_lengths)

    def current_lengths(self) -> np.ndarray:
        """‖p_i − P_i‖ in the frame the anchors are given in."""
        return np.linalg.norm(self.platform.array - self.base.array, axis=1)


# ── Condition entries ────────────────────────────────────────────────

@dataclass
class SimilarityCondition:
    holds: bool
    residual: float | None
    transform: SimilarityTransform | None = None

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "residual": self.residual,
            "transform": self.transform.to_dict() if self.transform is not None else None,
        }


@dataclass
class AffinityCondition:
    holds: bool
    residual: float | None
    transform: AffinityTransform | None = None
    coplanar: bool = False

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "residual": self.residual,
            "coplanar": self.coplanar,
            "transform": self.transform.to_dict() if self.transform is not None else None,
        }


@dataclass
class CollinearCoincidentCondition:
    """p_i collinear for the first m permuted indices, P_i coincident for the rest."""
    holds: bool
    residual: float | None
    m: int | None = None
    index_permutation: tuple[int, ...] | None = None
    swapped: bool = False

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "residual": self.residual,
            "m": self.m,
            "index_permutation": list(self.index_permutation) if self.index_permutation else None,
            "swapped": self.swapped,
        }


@dataclass
class ParallelLinesCondition:
    """Both anchor sets split the same way into points on two parallel lines."""
    holds: bool
    residual: float | None
    partition: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    lines: dict | None = None

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "residual": self.residual,
            "partition": [list(g) for g in self.partition] if self.partition else None,
            "lines": self.lines,
        }


@dataclass
class CameraCheck:
    holds: bool
    distance: float | None = None
    converged: bool | None = None
    skipped: str | None = None

    def to_dict(self) -> dict:
        return {"holds": self.holds, "distance": self.distance,
                "converged": self.converged, "skipped": self.skipped}


@dataclass
class ConditionReport:
    n: int
    cond_a: SimilarityCondition
    cond_b: AffinityCondition
    cond_c: CollinearCoincidentCondition
    cond_d: ParallelLinesCondition
    camera_images_equal: CameraCheck
    tol: float
    steps: list[dict] = field(default_factory=list)

    @property
    def holding(self) -> list[str]:
        return [name for name, c in (("a", self.cond_a), ("b", self.cond_b),
                                     ("c", self.cond_c), ("d", self.cond_d)) if c.holds]

    @property
    def verdict(self) -> str:
        return VERDICT_POSSIBLE if self.holding else VERDICT_EXCLUDED

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "tol": self.tol,
            "cond_a": self.cond_a.to_dict(),
            "cond_b": self.cond_b.to_dict(),
            "cond_c": self.cond_c.to_dict(),
            "cond_d": self.cond_d.to_dict(),
            "camera_images_equal": self.camera_images_equal.to_dict(),
            "conditions_holding": self.holding,
            "verdict": self.verdict,
            "caveat": CAVEAT,
            "steps": self.steps,
        }
