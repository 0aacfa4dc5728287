"""
Point placement from fiber directions.

Two routes:

* the placement chain: C₁ at the origin, C₂ one unit along ε₁₂, every later
  point as the intersection of two lines through points already placed;
* the interpretation search, for cameras with collinear triples. An axis
  found on L_pq may be the genuine fiber of pq or the collapse direction of
  the complementary triple. Each reading becomes a set of parallelism
  constraints C_j − C_i ∥ axis; a reading is kept when the linear system has
  a one-dimensional solution space (up to translation) whose camera matches
  the oracle.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np
from scipy.linalg import null_space

import config
from features.geometry.models import Direction, PointConfig, Vec3
from features.moduli.models import ALL_LINES, LineId
from features.reconstruction.models import CameraOracle, DirectionTable
from features.reconstruction.oracle import oracle_mismatch
from models.errors import InvalidConfig, ParallelLines
from utils.sphere_grid import axis_angle

log = logging.getLogger(__name__)

NULL_TOL = 1e-7
MIN_SEPARATION = 1e-6


def _vec(x: Vec3 | Direction | np.ndarray) -> np.ndarray:
    if isinstance(x, (Vec3, Direction)):
        return x.as_array()
    return np.asarray(x, dtype=float)


def intersect_lines(p1: Vec3 | np.ndarray, d1: Direction | np.ndarray,
                    p2: Vec3 | np.ndarray, d2: Direction | np.ndarray) -> tuple[Vec3, float]:
    """Midpoint of the common perpendicular of two lines and its length."""
    p1, d1, p2, d2 = _vec(p1), _vec(d1), _vec(p2), _vec(d2)
    u1 = d1 / np.linalg.norm(d1)
    u2 = d2 / np.linalg.norm(d2)
    if axis_angle(u1, u2) < config.PARALLEL_ANGLE_TOL:
        raise ParallelLines("lines are parallel", angle=axis_angle(u1, u2))
    w0 = p1 - p2
    b = float(u1 @ u2)
    d = float(u1 @ w0)
    e = float(u2 @ w0)
    den = 1.0 - b * b
    s = (b * e - d) / den
    t = (e - b * d) / den
    q1 = p1 + s * u1
    q2 = p2 + t * u2
    return Vec3.from_array(0.5 * (q1 + q2)), float(np.linalg.norm(q1 - q2))


# ── Placement chain ──────────────────────────────────────────────────

CHAIN: tuple[tuple[int, LineId, LineId], ...] = (
    (3, LineId(1, 3), LineId(2, 3)),
    (4, LineId(2, 4), LineId(3, 4)),
    (5, LineId(3, 5), LineId(4, 5)),
)


def place_chain(signed: dict[LineId, np.ndarray]) -> tuple[np.ndarray, list[float]]:
    """Positions (5, 3) from signed directions; residual of each intersection."""
    c = np.zeros((5, 3))
    c[1] = signed[LineId(1, 2)]
    residuals = []
    for target, first, second in CHAIN:
        point, residual = intersect_lines(c[first.i - 1], signed[first], c[second.i - 1], signed[second])
        c[target - 1] = point.as_array()
        residuals.append(residual)
    return c, residuals


# ── Interpretation search ────────────────────────────────────────────

@dataclass(frozen=True)
class Reading:
    line: LineId
    axis: np.ndarray
    kind: str  # "pair", "triple" or "drop"

    def constraints(self) -> list[tuple[int, int, np.ndarray]]:
        """0-based (i, j, axis) with C_j − C_i ∥ axis."""
        if self.kind == "pair":
            return [(self.line.i - 1, self.line.j - 1, self.axis)]
        if self.kind == "triple":
            a, b, c = complement_triple(self.line)
            return [(a - 1, b - 1, self.axis), (a - 1, c - 1, self.axis)]
        return []


def complement_triple(l: LineId) -> tuple[int, int, int]:
    return tuple(k for k in range(1, 6) if k not in (l.i, l.j))  # type: ignore[return-value]


def triple_reading_allowed(l: LineId, missing: set[LineId]) -> bool:
    """A collapse reading needs at least two missing pairs inside the complementary triple."""
    triple = complement_triple(l)
    return sum(LineId.of(a, b) in missing for a, b in combinations(triple, 2)) >= 2


def solve_constraints(constraints: list[tuple[int, int, np.ndarray]]) -> np.ndarray | None:
    """Positions (5, 3) spanning the null space, or None unless it is one-dimensional.

    Unknowns are the five points and one length per constraint; C₁ = 0 fixes
    the translation. The solution is scaled so that ‖C₂ − C₁‖ = 1.
    """
    m = len(constraints)
    n_cols = 15 + m
    a = np.zeros((3 * m + 3, n_cols))
    for k, (i, j, axis) in enumerate(constraints):
        rows = slice(3 * k, 3 * k + 3)
        a[rows, 3 * j:3 * j + 3] += np.eye(3)
        a[rows, 3 * i:3 * i + 3] -= np.eye(3)
        a[rows, 15 + k] = -axis
    a[3 * m:, 0:3] = np.eye(3)
    null = null_space(a, rcond=NULL_TOL)
    if null.shape[1] != 1:
        return None
    c = null[:15, 0].reshape(5, 3)
    scale = float(np.linalg.norm(c[1] - c[0]))
    if scale == 0.0:
        return None
    c = c / scale
    diameter = float(np.linalg.norm(c[:, None, :] - c[None, :, :], axis=2).max())
    gaps = [np.linalg.norm(c[p] - c[q]) for p, q in combinations(range(5), 2)]
    if min(gaps) <= MIN_SEPARATION * diameter:
        return None
    return c


def incidence_residual(c: np.ndarray, constraints: list[tuple[int, int, np.ndarray]]) -> float:
    """Largest distance of C_j from the line through C_i along the constraint axis."""
    worst = 0.0
    for i, j, axis in constraints:
        v = c[j] - c[i]
        worst = max(worst, float(np.linalg.norm(v - (v @ axis) * axis)))
    return worst


def _line_options(l: LineId, candidates: list[np.ndarray], missing: set[LineId]) -> list[tuple[Reading, ...]]:
    kinds = ["pair"] + (["triple"] if triple_reading_allowed(l, missing) else []) + ["drop"]
    options = []
    for choice in product(kinds, repeat=len(candidates)):
        if choice.count("pair") > 1:
            continue
        options.append(tuple(Reading(l, axis, kind) for axis, kind in zip(candidates, choice)))
    return options


def _cost(readings: tuple[Reading, ...]) -> tuple[int, int]:
    return (sum(r.kind == "drop" for r in readings), sum(r.kind == "triple" for r in readings))


@dataclass
class SearchOutcome:
    positions: np.ndarray
    readings: tuple[Reading, ...]
    mismatch: float
    residual: float
    tried: int


def search_interpretations(oracle: CameraOracle, table: DirectionTable,
                           seed: int = config.DEFAULT_SEED) -> SearchOutcome | None:
    """Cheapest reading of all candidate axes whose camera matches the oracle.

    Readings are tried in order of fewest dropped axes, then fewest collapse
    readings. Returns the best attempt (possibly above tolerance) or None if
    no reading determines a configuration.
    """
    missing = set(table.missing())
    per_line = []
    for l in ALL_LINES:
        if l in missing:
            continue
        candidates = [d.as_array() for d in table.entries[l].candidates]
        per_line.append(_line_options(l, candidates, missing))

    combos = [tuple(r for group in combo for r in group) for combo in product(*per_line)]
    combos.sort(key=_cost)
    log.debug("interpretation search: %d readings", len(combos))

    best: SearchOutcome | None = None
    for tried, readings in enumerate(combos, start=1):
        constraints = [c for r in readings for c in r.constraints()]
        positions = solve_constraints(constraints)
        if positions is None:
            continue
        try:
            cfg = PointConfig.from_array(positions)
        except InvalidConfig:
            continue
        mismatch = oracle_mismatch(oracle, cfg, seed=seed)
        outcome = SearchOutcome(positions, readings, mismatch, incidence_residual(positions, constraints), tried)
        if best is None or mismatch < best.mismatch:
            best = outcome
        if mismatch <= config.RECONSTRUCTION_TOL:
            log.info("interpretation search: accepted reading %d of %d (%d collapse, %d dropped)",
                     tried, len(combos), _cost(readings)[1], _cost(readings)[0])
            return outcome
    return best


def signs_from_readings(positions: np.ndarray, readings: tuple[Reading, ...]) -> dict[LineId, int]:
    """Sign of each pair reading relative to the axis it was read with."""
    out = {}
    for r in readings:
        if r.kind == "pair":
            v = positions[r.line.j - 1] - positions[r.line.i - 1]
            out[r.line] = 1 if float(v @ r.axis) >= 0.0 else -1
    return out
