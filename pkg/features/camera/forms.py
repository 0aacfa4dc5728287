"""
Exact binary forms of the parametrized camera.

Composing (s : t) ↦ (s² − t² : i(s² + t²) : 2st) with the projections turns
every edge factor into the quadratic form

    H_ij(s, t) = dx (s² − t²) + i dy (s² + t²) + 2 dz s t,   d = A_i − A_j,

and every camera component into a degree-10 form. Forms are stored
dehomogenized at t = 1 as sympy polynomials over QQ(i); the power of t
dividing a form is recovered as 10 minus the degree in u = s/t.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import reduce

import numpy as np
import sympy as sp

from features.geometry.models import P1Param, PointConfig
from features.moduli.models import GRAPH_TABLE
from models.errors import InvalidConfig
from utils.rational import as_fraction, to_sympy

log = logging.getLogger(__name__)

U = sp.Symbol("u")
GAUSSIAN = sp.QQ.algebraic_field(sp.I)
FORM_DEGREE = 10


def exact_points(cfg: PointConfig) -> list[tuple[sp.Rational, sp.Rational, sp.Rational]]:
    """Rational coordinates: the exact ones when present, else the shortest decimal of each float."""
    if cfg.n != 5:
        raise InvalidConfig(f"the camera needs exactly 5 points, got {cfg.n}")
    rows = cfg.exact if cfg.exact is not None else [[as_fraction(c) for c in (p.x, p.y, p.z)] for p in cfg.points]
    return [tuple(to_sympy(c) for c in row) for row in rows]  # type: ignore[misc]


def edge_form(a: tuple, b: tuple) -> sp.Poly:
    dx, dy, dz = (a[k] - b[k] for k in range(3))
    expr = dx * (U ** 2 - 1) + sp.I * dy * (U ** 2 + 1) + 2 * dz * U
    return sp.Poly(expr, U, domain=GAUSSIAN)


@dataclass(frozen=True)
class CameraForms:
    """Raw forms, their GCD and the cancelled forms of one configuration."""
    raw: tuple[sp.Poly, ...]
    gcd: sp.Poly
    gcd_t_power: int
    cancelled: tuple[sp.Poly, ...]

    @property
    def gcd_degree(self) -> int:
        return int(self.gcd.degree()) + self.gcd_t_power

    @property
    def cancelled_degree(self) -> int:
        return FORM_DEGREE - self.gcd_degree

    def cancelled_coefficients(self) -> np.ndarray:
        """(6, D + 1) complex array; column j multiplies s^j t^(D − j)."""
        d = self.cancelled_degree
        out = np.zeros((len(self.cancelled), d + 1), dtype=complex)
        for k, poly in enumerate(self.cancelled):
            coeffs = poly.all_coeffs()[::-1]
            for j, c in enumerate(coeffs):
                out[k, j] = complex(sp.N(c, 30))
        return out

    def evaluate_exact(self, s: sp.Expr, t: sp.Expr) -> tuple[sp.Expr, ...]:
        """Cancelled forms at (s : t), exactly."""
        d = self.cancelled_degree
        values = []
        for poly in self.cancelled:
            coeffs = poly.all_coeffs()[::-1]
            total = sum((c * s ** j * t ** (d - j) for j, c in enumerate(coeffs)), sp.Integer(0))
            values.append(sp.expand(total))
        return tuple(values)


def build_forms(cfg: PointConfig) -> CameraForms:
    pts = exact_points(cfg)
    edges: dict[tuple[int, int], sp.Poly] = {}
    for graph in GRAPH_TABLE:
        for i, j in graph:
            if (i, j) not in edges:
                edges[(i, j)] = edge_form(pts[i - 1], pts[j - 1])
    raw = tuple(reduce(lambda acc, e: acc * edges[e], graph[1:], edges[graph[0]]) for graph in GRAPH_TABLE)

    gcd = reduce(lambda g, f: g.gcd(f), raw[1:], raw[0])
    gcd = gcd.monic() if gcd.degree() > 0 else sp.Poly(1, U, domain=GAUSSIAN)
    t_power = min(FORM_DEGREE - int(f.degree()) for f in raw)
    cancelled = tuple(f.exquo(gcd) for f in raw)
    log.debug("camera forms of %s: gcd degree %d (+%d at infinity)",
              cfg.label or "config", gcd.degree(), t_power)
    return CameraForms(raw=raw, gcd=gcd, gcd_t_power=t_power, cancelled=cancelled)


def exact_param(p: P1Param) -> tuple[sp.Expr, sp.Expr]:
    """Gaussian-rational (s, t) from a parameter given in floats or integers."""
    def convert(z: complex) -> sp.Expr:
        z = complex(z)
        re, im = as_fraction(z.real), as_fraction(z.imag)
        return to_sympy(re) + sp.I * to_sympy(im)
    return convert(p.s), convert(p.t)
