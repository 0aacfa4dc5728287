"""
Reconstruction of a 5-point configuration from its camera.

Pipeline:
  1. Validate the oracle (not constant, values on M₅, real structure)
  2. Fiber search over the ten lines L_ij
  3. Four collinear points: only the cross ratio survives
  4. All ten fibers unique: sign resolution and the placement chain
  5. Otherwise: interpretation search over candidate axes
  6. Post-check against the oracle and mode assignment
"""

from __future__ import annotations

import logging
from itertools import combinations

import numpy as np

import config
from features.geometry.classify import collinearity_residual, planarity_residual
from features.geometry.models import PointConfig
from features.moduli.embedding import subtuple_cross_ratio
from features.moduli.models import ALL_LINES, LineId, M5Point
from features.reconstruction.algorithm import place_chain, search_interpretations, signs_from_readings
from features.reconstruction.fibers import find_all_fibers
from features.reconstruction.models import (
    CameraOracle,
    DirectionTable,
    ReconstructionMode,
    ReconstructionResult,
)
from features.reconstruction.oracle import check_oracle, is_constant, oracle_mismatch
from features.reconstruction.signs import ALGORITHM_PAIRS, resolve_signs
from features.steps.tracker import StepTracker
from models.errors import (
    ConstantCamera,
    InconsistentDirections,
    InvalidConfig,
    MoebiusError,
    NotInU,
    ParallelLines,
)
from utils.sphere_grid import seeded_fibonacci_sphere

log = logging.getLogger(__name__)

_MODES = {
    (False, 0): ReconstructionMode.DEG10,
    (False, 1): ReconstructionMode.DEG8,
    (True, 0): ReconstructionMode.PLANAR5,
    (True, 1): ReconstructionMode.PLANAR4,
    (True, 2): ReconstructionMode.PLANAR3,
}


def aligned_quadruple(table: DirectionTable) -> tuple[int, ...] | None:
    """Four indices (1-based) all of whose six pairs are missing, if any."""
    missing = set(table.missing())
    for quad in combinations(range(1, 6), 4):
        if all(LineId(a, b) in missing for a, b in combinations(quad, 2)):
            return quad
    return None


def camera_cross_ratio(oracle: CameraOracle, quad: tuple[int, ...], seed: int = config.DEFAULT_SEED) -> complex:
    """Cross ratio of the four aligned points, read off a generic camera value."""
    grid = seeded_fibonacci_sphere(32, seed + 2)
    w, bad = oracle.eval_many(grid)
    for value, degenerate in zip(w, bad):
        if degenerate:
            continue
        try:
            return complex(subtuple_cross_ratio(M5Point.from_array(value), quad))
        except NotInU:
            continue
    raise InconsistentDirections("no generic camera value to read the cross ratio from")


def mode_for(positions: np.ndarray) -> ReconstructionMode:
    """Mode from the planarity and the collinear triples of a reconstruction."""
    diameter = float(np.linalg.norm(positions[:, None, :] - positions[None, :, :], axis=2).max())
    planar = planarity_residual(positions, diameter) < config.RECONSTRUCTION_TOL
    triples = sum(collinearity_residual(positions[list(t)], diameter) < config.RECONSTRUCTION_TOL
                  for t in combinations(range(5), 3))
    mode = _MODES.get((planar, triples))
    if mode is None:
        raise InconsistentDirections(
            "reconstruction has an unexpected structure", planar=planar, collinear_triples=triples,
        )
    return mode


def _all_unique(table: DirectionTable) -> bool:
    return len(table.found()) == len(ALL_LINES) and all(not e.alternates for e in table.entries.values())


def reconstruct5(oracle: CameraOracle, grid_n: int = config.FIBER_GRID_N,
                 seed: int = config.DEFAULT_SEED, tracker: StepTracker | None = None) -> ReconstructionResult:
    """Recover a configuration whose camera is `oracle`.

    The result is similar to the source (affine to it when planar), up to a
    point reflection that `reflection_ambiguous` reports. In Planar3 mode it
    only shares the camera; `camera_equivalent_only` is set. C₁ sits at the
    origin and ‖C₂ − C₁‖ = 1.
    """
    tracker = tracker or StepTracker(run_id=f"reconstruct-{oracle.label or 'oracle'}")

    # ━━ Step 1: Validate Oracle ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
    step = tracker.begin("Validate Oracle", "oracle")
    if is_constant(oracle, seed):
        tracker.fail(step, "constant camera")
        raise ConstantCamera("the camera is constant: all points are collinear")
    try:
        defects = check_oracle(oracle, seed)
    except MoebiusError as e:
        tracker.fail(step, e.message)
        raise
    tracker.complete(step, output_summary="oracle values are camera values", metadata=defects)
    if oracle.metadata is not None:
        log.debug("oracle hint: %s", oracle.metadata.tag.value)

    # ━━ Step 2: Fiber Search ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
    step = tracker.begin("Fiber Search", "fibers", input_summary=f"grid {grid_n}")
    table = find_all_fibers(oracle, grid_n, seed)
    tracker.complete(step, output_summary=f"{len(table.found())}/10 found",
                     metadata={"missing": [str(l) for l in table.missing()]})

    # ━━ Step 3: Four Aligned Points ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
    quad = aligned_quadruple(table)
    if quad is not None:
        step = tracker.begin("Cross Ratio", "invariant", input_summary=f"points {quad}")
        ratio = camera_cross_ratio(oracle, quad, seed)
        tracker.complete(step, output_summary=f"cross ratio {ratio.real:.12g}{ratio.imag:+.12g}i")
        return ReconstructionResult(
            config=None, sign_assignment={}, intersection_residual=0.0,
            mode=ReconstructionMode.CROSS_RATIO_ONLY, cross_ratio=ratio, cross_ratio_indices=quad,
            table=table, steps=tracker.to_list(timing=False),
        )

    positions: np.ndarray | None = None
    signs: dict[LineId, int] = {}
    residual = float("inf")

    # ━━ Step 4: Placement Chain ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
    if _all_unique(table):
        step = tracker.begin("Resolve Signs", "signs", input_summary=f"{len(ALGORITHM_PAIRS)} pairs")
        try:
            resolution = resolve_signs(table, ALGORITHM_PAIRS)
        except InconsistentDirections as e:
            tracker.fail(step, e.message)
            raise
        tracker.complete(step, output_summary=f"residual {resolution.residual:.2e}")

        step = tracker.begin("Place Points", "placement")
        try:
            chain_positions, chain_residuals = place_chain(resolution.signed(table))
            mismatch = oracle_mismatch(oracle, PointConfig.from_array(chain_positions), seed=seed)
        except (ParallelLines, InvalidConfig) as e:
            chain_positions, chain_residuals, mismatch = None, [], float("inf")
            log.warning("placement chain failed: %s", e.message)
        if chain_positions is not None and mismatch <= config.RECONSTRUCTION_TOL:
            positions, signs, residual = chain_positions, resolution.assignment, max(chain_residuals)
            tracker.complete(step, output_summary=f"intersection residual {residual:.2e}",
                             metadata={"intersection_residuals": chain_residuals})
        else:
            log.warning("placement chain does not reproduce the oracle (%.2e); searching readings", mismatch)
            tracker.fail(step, f"oracle mismatch {mismatch:.2e}")

    # ━━ Step 5: Interpretation Search ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
    if positions is None:
        step = tracker.begin("Interpretation Search", "placement",
                             input_summary=f"{len(table.found())} found lines")
        outcome = search_interpretations(oracle, table, seed)
        if outcome is None or outcome.mismatch > config.RECONSTRUCTION_TOL:
            mismatch = outcome.mismatch if outcome is not None else None
            tracker.fail(step, f"no reading matches the oracle (best {mismatch})")
            raise InconsistentDirections("no reading of the fiber axes reproduces the camera",
                                         best_mismatch=mismatch)
        positions, residual = outcome.positions, outcome.residual
        signs = signs_from_readings(positions, outcome.readings)
        for r in outcome.readings:
            if r.kind == "pair":
                table = table.with_axis(r.line, r.axis)
        first = min(signs) if signs else None
        if first is not None and signs[first] < 0:
            positions = -positions
            signs = {l: -s for l, s in signs.items()}
        tracker.complete(step, output_summary=f"reading {outcome.tried}",
                         metadata={"collapse_readings": [str(r.line) for r in outcome.readings if r.kind == "triple"],
                                   "dropped": [str(r.line) for r in outcome.readings if r.kind == "drop"]})

    # ━━ Step 6: Verify ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
    step = tracker.begin("Verify Against Oracle", "verification")
    cfg = PointConfig.from_array(positions, label=f"reconstruction of {oracle.label or 'oracle'}")
    mismatch = oracle_mismatch(oracle, cfg, seed=seed)
    mode = mode_for(positions)
    if mode is ReconstructionMode.PLANAR3:
        log.warning("two collinear triples: the result shares the camera but may not be affine to the source")
    tracker.complete(step, output_summary=f"mode {mode.value}, mismatch {mismatch:.2e}")
    log.info("reconstruct5: mode %s, intersection residual %.2e, oracle mismatch %.2e",
             mode.value, residual, mismatch)
    return ReconstructionResult(
        config=cfg,
        sign_assignment=signs,
        intersection_residual=residual,
        mode=mode,
        oracle_mismatch=mismatch,
        reflection_ambiguous=True,
        camera_equivalent_only=mode is ReconstructionMode.PLANAR3,
        table=table,
        steps=tracker.to_list(timing=False),
    )
