"""
Geometry feature — directions, the conic model of S², projections,
configuration classification and similarity/affinity fitting.

Public API:
    from features.geometry import PointConfig, Direction, gamma, classify, fit_similarity
"""

from features.geometry.classify import classify, is_coplanar
from features.geometry.cross_ratio import INFINITY, cross_ratio, mobius
from features.geometry.fitting import fit_affinity, fit_similarity
from features.geometry.models import (
    AffinityTransform,
    ConfigClass,
    ConfigTag,
    ConicPoint,
    Direction,
    P1Param,
    PointConfig,
    SimilarityTransform,
    Vec3,
)
from features.geometry.sphere import conic_param, gamma, gamma_inverse, project

__all__ = [
    "AffinityTransform", "ConfigClass", "ConfigTag", "ConicPoint", "Direction",
    "INFINITY", "P1Param", "PointConfig", "SimilarityTransform", "Vec3",
    "classify", "conic_param", "cross_ratio", "fit_affinity", "fit_similarity",
    "gamma", "gamma_inverse", "is_coplanar", "mobius", "project",
]
