"""
The embedding φ: U/PGL₂ → M₅ ⊂ P⁵ by the six multigraph quintics.

Each component is a product of edge factors a_i b_j − a_j b_i over one graph
of GRAPH_TABLE. Every vertex has valency 2 in every graph, so a Möbius
transformation rescales all six components by the same factor.
"""

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

import config
from features.geometry.cross_ratio import INFINITY, cross_ratio, from_homogeneous
from features.moduli.models import GRAPH_TABLE, M5Point, P1PointPair, Tuple5P1
from models.errors import NotInU
from utils.projective import normalize_max

log = logging.getLogger(__name__)

_EDGE_I = np.array([[i - 1 for i, _ in g] for g in GRAPH_TABLE])
_EDGE_J = np.array([[j - 1 for _, j in g] for g in GRAPH_TABLE])


def phi_edge(p: P1PointPair, q: P1PointPair) -> complex:
    """a_p b_q − a_q b_p."""
    return complex(p.a * q.b - q.a * p.b)


def phi_raw_array(pairs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized components for (..., 5, 2) homogeneous pairs.

    Returns (w of shape (..., 6), reference scale of shape (...)), the
    reference being the largest edge factor raised to the fifth power.
    """
    pairs = np.asarray(pairs, dtype=complex)
    norms = np.linalg.norm(pairs, axis=-1, keepdims=True)
    pairs = pairs / np.where(norms > 0.0, norms, 1.0)
    a, b = pairs[..., 0], pairs[..., 1]
    factors = a[..., _EDGE_I] * b[..., _EDGE_J] - a[..., _EDGE_J] * b[..., _EDGE_I]
    w = np.prod(factors, axis=-1)
    ai, bi = a[..., :, None], b[..., :, None]
    aj, bj = a[..., None, :], b[..., None, :]
    reference = np.max(np.abs(ai * bj - aj * bi), axis=(-2, -1)) ** 5
    return w, reference


def phi_array(pairs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Normalized components plus a boolean mask of rows outside U."""
    w, reference = phi_raw_array(pairs)
    outside = np.max(np.abs(w), axis=-1) <= config.NOT_IN_U_TOL * reference
    return normalize_max(w), outside


def phi(m: Tuple5P1) -> M5Point:
    """The M₅ point of a 5-tuple, largest component magnitude 1."""
    w, outside = phi_array(m.as_array())
    if bool(outside):
        raise NotInU("three of the five points coincide")
    return M5Point.from_array(w)


def mobius_apply(g: np.ndarray, m: Tuple5P1) -> Tuple5P1:
    """Diagonal action of a 2×2 matrix on all five points."""
    g = np.asarray(g, dtype=complex)
    moved = m.as_array() @ g.T
    return Tuple5P1(tuple(P1PointPair(complex(a), complex(b)) for a, b in moved))  # type: ignore[arg-type]


# ── Inverse on the open part ─────────────────────────────────────────

def forgetful_cross_ratios(p: M5Point) -> tuple[complex, complex]:
    """Cross ratios of (m1, m2, m3, m4) and (m2, m3, m4, m5).

    As ratios of graph components: w2·w3 / (w0·w5) and w3·w4 / (w0·w1).
    """
    w = p.as_array()
    den_a, den_b = w[0] * w[5], w[0] * w[1]
    scale = float(np.max(np.abs(w))) ** 2
    if abs(den_a) <= config.NOT_IN_U_TOL * scale or abs(den_b) <= config.NOT_IN_U_TOL * scale:
        raise NotInU("point lies on a boundary line where the cross ratios are undefined")
    return complex(w[2] * w[3] / den_a), complex(w[3] * w[4] / den_b)


def m5_to_tuple(p: M5Point) -> Tuple5P1:
    """A representative 5-tuple normalized to (m2, m3, m4) = (0, 1, ∞)."""
    cr_a, cr_b = forgetful_cross_ratios(p)
    m5 = from_homogeneous(1.0 + 0j, 1.0 - cr_b)
    last = P1PointPair.infinity() if m5 == INFINITY else P1PointPair.finite(m5)
    return Tuple5P1((
        P1PointPair.finite(1.0 - cr_a),
        P1PointPair.finite(0.0),
        P1PointPair.finite(1.0),
        P1PointPair.infinity(),
        last,
    ))


def subtuple_cross_ratio(p: M5Point, idx: Sequence[int]) -> complex | float:
    """Cross ratio of four of the five points (1-based indices, in order)."""
    rep = m5_to_tuple(p)
    values = [from_homogeneous(rep.points[k - 1].a, rep.points[k - 1].b) for k in idx]
    return cross_ratio(values)
