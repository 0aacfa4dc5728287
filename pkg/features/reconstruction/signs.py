"""
Sign resolution for unsigned fiber axes.

A sign assignment s turns each axis into a direction pointing from point i
to point j. It is consistent when positions C and lengths λ ≥ 0 exist with
C_j − C_i = λ_ij s_ij ε_ij for every consumed pair. The first pair is fixed
to s = +1 and λ = 1; flipping every sign gives the point reflection.
"""

from __future__ import annotations

import logging
from itertools import product

import numpy as np
from scipy.optimize import lsq_linear

import config
from features.moduli.models import LineId
from features.reconstruction.models import DirectionTable, SignResolution
from models.errors import InconsistentDirections, PreconditionViolated

log = logging.getLogger(__name__)

# Pairs consumed by the spatial placement chain, in order.
ALGORITHM_PAIRS: tuple[LineId, ...] = (
    LineId(1, 2), LineId(1, 3), LineId(2, 3), LineId(2, 4),
    LineId(3, 4), LineId(3, 5), LineId(4, 5),
)


def sign_residual(directions: list[np.ndarray], pairs: list[LineId]) -> tuple[float, np.ndarray]:
    """Bounded least-squares residual of one signed direction set.

    Unknowns are C_2..C_5 (C_1 = 0) and λ for every pair after the first.
    Returns (residual, solution vector).
    """
    m = len(pairs)
    n_unknowns = 12 + (m - 1)
    a = np.zeros((3 * m, n_unknowns))
    b = np.zeros(3 * m)
    for k, (l, d) in enumerate(zip(pairs, directions)):
        rows = slice(3 * k, 3 * k + 3)
        if l.j > 1:
            a[rows, 3 * (l.j - 2):3 * (l.j - 1)] += np.eye(3)
        if l.i > 1:
            a[rows, 3 * (l.i - 2):3 * (l.i - 1)] -= np.eye(3)
        if k == 0:
            b[rows] = d
        else:
            a[rows, 12 + k - 1] = -d
    lb = np.concatenate([np.full(12, -np.inf), np.zeros(m - 1)])
    ub = np.full(n_unknowns, np.inf)
    result = lsq_linear(a, b, bounds=(lb, ub), method="trf", tol=1e-12)
    scale = max(1.0, float(np.max(result.x[12:], initial=0.0)))
    return float(np.linalg.norm(a @ result.x - b)) / scale, result.x


def resolve_signs(table: DirectionTable, pairs: tuple[LineId, ...] | list[LineId] | None = None) -> SignResolution:
    """Search every sign assignment of the consumed pairs (the first fixed to +1).

    `pairs` defaults to ALGORITHM_PAIRS; pairs missing from the table are
    skipped. Raises InconsistentDirections when even the best assignment
    leaves a residual above SIGN_RESIDUAL_TOL.
    """
    wanted = list(pairs) if pairs is not None else list(ALGORITHM_PAIRS)
    found = set(table.found())
    use = [l for l in wanted if l in found]
    if len(use) < 2:
        raise PreconditionViolated("sign resolution needs at least two found pairs",
                                   pairs=[str(l) for l in use])
    axes = [table.axis(l) for l in use]

    best: tuple[float, tuple[int, ...]] | None = None
    for tail in product((1, -1), repeat=len(use) - 1):
        signs = (1,) + tail
        residual, _ = sign_residual([s * a for s, a in zip(signs, axes)], use)
        if best is None or residual < best[0]:
            best = (residual, signs)
    assert best is not None
    residual, signs = best
    log.debug("resolve_signs: best residual %.2e over %d assignments", residual, 2 ** (len(use) - 1))
    if residual > config.SIGN_RESIDUAL_TOL:
        raise InconsistentDirections(
            "no sign assignment makes the fiber directions consistent",
            residual=residual, pairs=[str(l) for l in use],
        )
    return SignResolution(assignment=dict(zip(use, signs)), residual=residual, reflection_ambiguous=True)
