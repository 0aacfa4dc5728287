"""
Fiber search: the directions whose camera value lies on a line L_ij.

The oracle is sampled once on a Fibonacci grid. For each line the grid
points closest to it seed a damped least-squares descent on the sphere; the
converged axes below FIBER_THRESHOLD are the fiber candidates.

Lines cut out by a single component (|S_ij| = 1) share their hyperplane with
other lines, so their candidates are filtered against axes already found
for every pair whose vanishing set contains that component.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

import config
from features.geometry.models import Direction
from features.moduli.lines import VANISHING_SETS, distance_to_line, distance_to_line_array
from features.moduli.models import ALL_LINES, LineId
from features.reconstruction.models import CameraOracle, DirectionTable, FiberEntry
from models.errors import AmbiguousFiber, PreconditionViolated
from utils.sphere_grid import axis_angle, chart, seeded_fibonacci_sphere, tangent_basis

log = logging.getLogger(__name__)

MIN_GRID = 500
_PENALTY_SCALE = 1.0


@dataclass(frozen=True)
class GridSample:
    """Oracle values on a direction grid, shared by all ten searches."""
    directions: np.ndarray
    values: np.ndarray
    degenerate: np.ndarray

    @classmethod
    def take(cls, oracle: CameraOracle, grid_n: int, seed: int = config.DEFAULT_SEED) -> GridSample:
        if grid_n < MIN_GRID:
            raise PreconditionViolated(f"fiber grid needs at least {MIN_GRID} points, got {grid_n}")
        grid = seeded_fibonacci_sphere(grid_n, seed)
        values, bad = oracle.eval_many(grid)
        return cls(directions=grid, values=values, degenerate=np.asarray(bad, dtype=bool))


def _seed_points(sample: GridSample, l: LineId, count: int) -> list[np.ndarray]:
    """Best grid points for l, spread out by at least a few grid spacings."""
    dist = distance_to_line_array(sample.values, l)
    dist = np.where(sample.degenerate, np.inf, dist)
    spacing = np.sqrt(4.0 * np.pi / len(sample.directions))
    picked: list[np.ndarray] = []
    for k in np.argsort(dist):
        if not np.isfinite(dist[k]):
            break
        v = sample.directions[k]
        if all(axis_angle(v, p) > 3.0 * spacing for p in picked):
            picked.append(v)
            if len(picked) >= count:
                break
    return picked


def refine_fiber(oracle: CameraOracle, l: LineId, start: np.ndarray) -> tuple[np.ndarray, float]:
    """Descend from `start` towards L_ij; returns (unit direction, residual)."""
    idx = sorted(VANISHING_SETS[l])
    b1, b2 = tangent_basis(start)
    w0, bad0 = oracle.eval_many(start[None, :])
    if bool(bad0[0]):
        return start, np.inf
    ref = int(np.argmax(np.abs(w0[0])))
    penalty = np.full(2 * len(idx), _PENALTY_SCALE)

    def residual(uv: np.ndarray) -> np.ndarray:
        w, bad = oracle.eval_many(chart(start, b1, b2, uv)[None, :])
        if bool(bad[0]):
            return penalty
        w = w[0]
        phase = np.conj(w[ref]) / abs(w[ref]) if abs(w[ref]) > 0.0 else 1.0
        r = w[idx] * phase / np.linalg.norm(w)
        return np.concatenate([r.real, r.imag])

    result = least_squares(residual, np.zeros(2), method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15,
                           max_nfev=200)
    eps = chart(start, b1, b2, result.x)
    w, bad = oracle.eval_many(eps[None, :])
    if bool(bad[0]):
        return eps, np.inf
    return eps, distance_to_line(w[0], l)


def _dedupe(axes: list[tuple[np.ndarray, float]]) -> list[tuple[np.ndarray, float]]:
    kept: list[tuple[np.ndarray, float]] = []
    for v, r in sorted(axes, key=lambda t: t[1]):
        if all(axis_angle(v, k) > config.FIBER_ANGLE_TOL for k, _ in kept):
            kept.append((v, r))
    return kept


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    """Unsigned axes are stored with their largest coordinate positive."""
    return v if v[int(np.argmax(np.abs(v)))] >= 0.0 else -v


def find_fiber(oracle: CameraOracle, l: LineId, grid_n: int = config.FIBER_GRID_N,
               exclude: list[np.ndarray] | None = None, allow_multiple: bool = False,
               sample: GridSample | None = None, seed: int = config.DEFAULT_SEED) -> FiberEntry:
    """Axis ±ε with camera value on L_ij, or a NotFound entry.

    Candidates within FIBER_ANGLE_TOL of an axis in `exclude` are dropped.
    Several surviving axes raise AmbiguousFiber unless `allow_multiple`, in
    which case the best is the primary axis and the rest are alternates.
    """
    sample = sample or GridSample.take(oracle, grid_n, seed)
    refined = [refine_fiber(oracle, l, s) for s in _seed_points(sample, l, config.FIBER_CANDIDATES)]
    best_residual = min((r for _, r in refined), default=np.inf)
    accepted = _dedupe([(v, r) for v, r in refined if r <= config.FIBER_THRESHOLD])

    exclude = exclude or []
    survivors = [(v, r) for v, r in accepted
                 if all(axis_angle(v, e) > config.FIBER_ANGLE_TOL for e in exclude)]
    if len(survivors) < len(accepted):
        log.debug("%s: %d candidate(s) rejected as fibers of other lines", l, len(accepted) - len(survivors))

    if not survivors:
        log.debug("%s: not found (best residual %.2e)", l, best_residual)
        return FiberEntry(axis=None, found=False, residual=float(best_residual))
    if len(survivors) > 1 and not allow_multiple:
        raise AmbiguousFiber(
            f"{l} has {len(survivors)} non-antipodal fibers",
            line=str(l), axes=[v.tolist() for v, _ in survivors],
        )
    axes = [Direction.from_array(_canonical_sign(v), normalize=True) for v, _ in survivors]
    return FiberEntry(axis=axes[0], found=True, residual=float(survivors[0][1]), alternates=tuple(axes[1:]))


def find_all_fibers(oracle: CameraOracle, grid_n: int = config.FIBER_GRID_N,
                    seed: int = config.DEFAULT_SEED) -> DirectionTable:
    """Search all ten lines: four-component lines first, then the single-component ones."""
    sample = GridSample.take(oracle, grid_n, seed)
    entries: dict[LineId, FiberEntry] = {}
    wide = [l for l in ALL_LINES if len(VANISHING_SETS[l]) > 1]
    narrow = [l for l in ALL_LINES if len(VANISHING_SETS[l]) == 1]
    for l in wide:
        entries[l] = find_fiber(oracle, l, grid_n, allow_multiple=True, sample=sample)
    for l in narrow:
        (k,) = VANISHING_SETS[l]
        exclude = [a.as_array() for m, e in entries.items() if k in VANISHING_SETS[m] for a in e.candidates]
        entries[l] = find_fiber(oracle, l, grid_n, exclude=exclude, allow_multiple=True, sample=sample)
    table = DirectionTable(entries)
    log.info("fiber search: found %s, missing %s",
             [str(l) for l in table.found()], [str(l) for l in table.missing()])
    return table
