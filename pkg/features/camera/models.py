"""
Data models for the camera feature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Union

import sympy as sp

from features.geometry.models import ConfigClass, Direction, P1Param
from features.moduli.models import M5Point
from utils.rational import format_gaussian

CONSTANT = "Constant"

# An image degree is an integer, or CONSTANT for a constant camera.
Degree = Union[int, str]


class DegreeMethod(str, Enum):
    EXACT_GCD = "ExactGCD"
    HYPERPLANE_ROOT_COUNT = "HyperplaneRootCount"


class EvalMode(str, Enum):
    FLOAT = "float"
    EXACT = "exact"


@dataclass(frozen=True)
class CameraSample:
    param: P1Param
    direction: Direction
    value: M5Point


@dataclass(frozen=True)
class ImageCurve:
    samples: tuple[CameraSample, ...]
    config_class: ConfigClass
    claimed_degree: Degree
    skipped: int = 0


@dataclass(frozen=True)
class ExactM5Point:
    """Camera value with Gaussian-rational components."""
    w: tuple[sp.Expr, ...]

    def to_float(self) -> M5Point:
        return M5Point.from_array([complex(sp.N(z, 30)) for z in self.w])

    def to_dict(self) -> dict:
        return {"w": [format_gaussian(z) for z in self.w]}


@dataclass
class DegreeReport:
    """Degree bookkeeping for one configuration.

    image_degree * map_degree = degree_of_forms - gcd_degree unless the
    image is a point.
    """
    degree_of_forms: int
    gcd_degree: int
    map_degree: int
    image_degree: Degree
    method: DegreeMethod = DegreeMethod.EXACT_GCD
    root_count_image_degree: Degree | None = None
    root_count_map_degree: int | None = None
    root_count_trials: list[dict] = field(default_factory=list)
    config_tag: str | None = None

    def to_dict(self) -> dict:
        return {
            "degree_of_forms": self.degree_of_forms,
            "gcd_degree": self.gcd_degree,
            "map_degree": self.map_degree,
            "image_degree": self.image_degree,
            "method": self.method.value,
            "cross_check": {
                "method": DegreeMethod.HYPERPLANE_ROOT_COUNT.value,
                "image_degree": self.root_count_image_degree,
                "map_degree": self.root_count_map_degree,
                "trials": self.root_count_trials,
            },
            "config_tag": self.config_tag,
        }


@dataclass(frozen=True)
class ImageDistance:
    distance: float
    converged: bool
    samples: int
