"""Fiber search, sign resolution, placement and n-point equivalence."""

from __future__ import annotations

import numpy as np
import pytest

from features.camera import camera_eval
from features.geometry import Direction, PointConfig, fit_similarity
from features.moduli import ALL_LINES, LineId, distance_to_line, sharing_lines
from features.reconstruction import (
    ALGORITHM_PAIRS,
    DirectionTable,
    FiberEntry,
    ReconstructionMode,
    camera_oracle,
    check_oracle,
    find_all_fibers,
    find_fiber,
    intersect_lines,
    oracle_from_function,
    oracle_mismatch,
    place_chain,
    reconstruct5,
    resolve_signs,
    verify_equivalence_n,
)
from features.steps import StepTracker
from features.reconstruction.signs import sign_residual
from models.errors import ConstantCamera, DegenerateDirection, InconsistentDirections, ParallelLines, PreconditionViolated
from tests.conftest import class_config, random_planar, random_spatial, similar
from utils.projective import projective_distance
from utils.sphere_grid import axis_angle

GRID = 2000


def _axis(arr: np.ndarray, l: LineId) -> np.ndarray:
    d = arr[l.j - 1] - arr[l.i - 1]
    return d / np.linalg.norm(d)


def _true_table(cfg: PointConfig) -> DirectionTable:
    """Unsigned axes with their largest coordinate positive, as the fiber search stores them."""
    entries = {}
    for l in ALL_LINES:
        v = _axis(cfg.array, l)
        v = v if v[int(np.argmax(np.abs(v)))] >= 0 else -v
        entries[l] = FiberEntry(axis=Direction.from_array(v, normalize=True), found=True, residual=0.0)
    return DirectionTable(entries)


# ── Line intersection ────────────────────────────────────────────────

def test_intersect_concurrent_lines():
    point, residual = intersect_lines(np.zeros(3), np.array([1.0, 0, 0]),
                                      np.array([1.0, 1.0, 0]), np.array([0, 1.0, 0]))
    assert np.allclose(point.as_array(), [1, 0, 0])
    assert residual == pytest.approx(0.0, abs=1e-12)


def test_intersect_skew_lines_reports_the_gap():
    point, residual = intersect_lines(np.zeros(3), np.array([1.0, 0, 0]),
                                      np.array([0, 0, 1.0]), np.array([0, 1.0, 0]))
    assert np.allclose(point.as_array(), [0, 0, 0.5])
    assert residual == pytest.approx(1.0)


def test_intersect_parallel_lines_raises():
    with pytest.raises(ParallelLines):
        intersect_lines(np.zeros(3), np.array([1.0, 0, 0]), np.array([0, 1.0, 0]), np.array([-2.0, 0, 0]))


# ── Oracle ───────────────────────────────────────────────────────────

def test_camera_oracle_passes_its_own_checks(spatial_generic):
    oracle = camera_oracle(spatial_generic)
    defects = check_oracle(oracle)
    assert defects["quadric_defect"] <= 1e-8
    assert defects["real_structure_defect"] <= 1e-8
    assert oracle_mismatch(oracle, spatial_generic) <= 1e-8


def test_oracle_mismatch_sees_a_different_configuration(spatial_generic):
    assert oracle_mismatch(camera_oracle(spatial_generic), random_spatial(8)) > 1e-3


def test_oracle_from_function_matches_the_camera(spatial_generic):
    oracle = oracle_from_function(lambda d: camera_eval(spatial_generic, d), label="wrapped")
    d = Direction.from_array(np.array([0.3, -0.5, 0.8]), normalize=True)
    assert projective_distance(oracle.eval(d).as_array(), camera_eval(spatial_generic, d).as_array()) <= 1e-10
    assert oracle_mismatch(oracle, spatial_generic) <= 1e-10
    check_oracle(oracle)


def test_wrapped_oracle_reports_degenerate_directions():
    cfg = class_config("SpatialThreeCollinear")
    oracle = oracle_from_function(lambda d: camera_eval(cfg, d))
    with pytest.raises(DegenerateDirection):
        oracle.eval(Direction.of(1.0, 0.0, 0.0))
    _, bad = oracle.eval_many(np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]))
    assert bad.tolist() == [True, False]


# ── Fibers ───────────────────────────────────────────────────────────

def test_find_fiber_recovers_the_segment_axis(spatial_generic):
    oracle = camera_oracle(spatial_generic)
    for l in (LineId(1, 2), LineId(3, 5)):
        entry = find_fiber(oracle, l, grid_n=GRID)
        assert entry.found
        assert abs(float(entry.axis.as_array() @ _axis(spatial_generic.array, l))) == pytest.approx(1.0, abs=1e-6)


def test_find_all_fibers_on_a_generic_configuration(spatial_generic):
    table = find_all_fibers(camera_oracle(spatial_generic), grid_n=GRID)
    assert table.missing() == []
    for l in ALL_LINES:
        assert abs(float(table.axis(l) @ _axis(spatial_generic.array, l))) == pytest.approx(1.0, abs=1e-6)


def test_collinear_triple_pairs_are_not_found():
    table = find_all_fibers(camera_oracle(class_config("SpatialThreeCollinear")), grid_n=GRID)
    assert set(table.missing()) == {LineId(1, 2), LineId(1, 3), LineId(2, 3)}
    assert table.to_dict()["L12"]["found"] is False


def test_fiber_grid_has_a_floor(spatial_generic):
    with pytest.raises(PreconditionViolated):
        find_fiber(camera_oracle(spatial_generic), LineId(1, 2), grid_n=100)


def test_single_component_search_drops_fibers_of_sharing_lines(spatial_generic):
    oracle = camera_oracle(spatial_generic)
    target = LineId(1, 3)
    decoy = _axis(spatial_generic.array, LineId(4, 5))
    # along A4 - A5 the camera lies on L45, which also kills the L13 coordinate
    assert distance_to_line(oracle.eval(Direction.from_array(decoy, normalize=True)), target) <= 1e-10

    loose = find_fiber(oracle, target, grid_n=GRID, allow_multiple=True)
    assert any(axis_angle(c.as_array(), decoy) <= 1e-6 for c in loose.candidates)

    exclude = [_axis(spatial_generic.array, l) for l in sharing_lines(target)]
    strict = find_fiber(oracle, target, grid_n=GRID, exclude=exclude)
    assert strict.alternates == ()
    assert axis_angle(strict.axis.as_array(), _axis(spatial_generic.array, target)) <= 1e-6


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(300, 320))
def test_fiber_axes_on_random_configurations(seed):
    cfg = random_spatial(seed)
    table = find_all_fibers(camera_oracle(cfg), grid_n=GRID)
    for l in ALL_LINES:
        assert axis_angle(table.axis(l), _axis(cfg.array, l)) <= 1e-6


# ── Signs ────────────────────────────────────────────────────────────

def test_resolve_signs_on_true_axes(spatial_generic):
    table = _true_table(spatial_generic)
    resolution = resolve_signs(table)
    assert resolution.residual <= 1e-8
    assert resolution.reflection_ambiguous
    assert set(resolution.assignment) == set(ALGORITHM_PAIRS)
    signed = resolution.signed(table)
    orientation = {np.sign(float(signed[l] @ _axis(spatial_generic.array, l))) for l in ALGORITHM_PAIRS}
    assert len(orientation) == 1


def test_resolve_signs_rejects_random_axes(rng):
    entries = {}
    for l in ALL_LINES:
        entries[l] = FiberEntry(axis=Direction.from_array(rng.normal(size=3), normalize=True), found=True, residual=0.0)
    with pytest.raises(InconsistentDirections):
        resolve_signs(DirectionTable(entries))


def test_resolve_signs_needs_two_pairs(spatial_generic):
    table = _true_table(spatial_generic)
    only = DirectionTable({LineId(1, 2): table.entries[LineId(1, 2)]})
    with pytest.raises(PreconditionViolated):
        resolve_signs(only)


def test_flipped_signs_are_equally_consistent(spatial_generic):
    table = _true_table(spatial_generic)
    resolution = resolve_signs(table)
    flipped = resolution.flipped()
    assert all(flipped.assignment[l] == -s for l, s in resolution.assignment.items())

    pairs = list(ALGORITHM_PAIRS)
    residual, _ = sign_residual([flipped.signed(table)[l] for l in pairs], pairs)
    assert residual == pytest.approx(resolution.residual, abs=1e-10)

    c, res = place_chain(resolution.signed(table))
    c_flip, res_flip = place_chain(flipped.signed(table))
    assert np.allclose(c_flip, -c, atol=1e-10)
    assert np.allclose(res_flip, res, atol=1e-10)
    # a point reflection leaves the camera unchanged
    m = oracle_mismatch(camera_oracle(spatial_generic), PointConfig.from_array(c))
    m_flip = oracle_mismatch(camera_oracle(spatial_generic), PointConfig.from_array(c_flip))
    assert m <= 1e-6 and m_flip <= 1e-6
    assert m_flip == pytest.approx(m, abs=1e-9)


# ── Reconstruction ───────────────────────────────────────────────────

@pytest.mark.parametrize("seed", [7, 21])
def test_reconstruct_spatial_round_trip(seed):
    cfg = random_spatial(seed)
    tracker = StepTracker("reconstruct-test")
    result = reconstruct5(camera_oracle(cfg), grid_n=GRID, tracker=tracker)
    assert result.mode is ReconstructionMode.DEG10
    assert np.allclose(result.config.array[0], 0.0)
    assert np.linalg.norm(result.config.array[1]) == pytest.approx(1.0)
    _, residual = fit_similarity(result.config, cfg)
    assert residual <= 1e-6
    assert result.oracle_mismatch <= 1e-6
    assert not result.camera_equivalent_only
    assert [s["name"] for s in result.steps][:2] == ["Validate Oracle", "Fiber Search"]


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100, 200))
def test_reconstruct_round_trip_on_seeded_configurations(seed):
    cfg = random_spatial(seed)
    result = reconstruct5(camera_oracle(cfg), grid_n=GRID)
    _, residual = fit_similarity(result.config, cfg)
    assert residual <= 1e-6


def test_reconstruct_is_invariant_under_similarity(rng):
    cfg = random_spatial(5)
    moved, _ = similar(cfg, rng, scale=4.0)
    a = reconstruct5(camera_oracle(cfg), grid_n=GRID)
    b = reconstruct5(camera_oracle(moved), grid_n=GRID)
    _, residual = fit_similarity(a.config, b.config)
    assert residual <= 1e-6


def test_reconstruct_planar_configuration():
    cfg = random_planar(3)
    result = reconstruct5(camera_oracle(cfg), grid_n=GRID)
    assert result.mode is ReconstructionMode.PLANAR5
    assert not result.camera_equivalent_only
    _, residual = fit_similarity(result.config, cfg)
    assert residual <= 1e-6


def test_reconstruct_with_a_collinear_triple():
    cfg = class_config("SpatialThreeCollinear")
    result = reconstruct5(camera_oracle(cfg), grid_n=GRID)
    assert result.mode is ReconstructionMode.DEG8
    assert not result.camera_equivalent_only
    _, residual = fit_similarity(result.config, cfg)
    assert residual <= 1e-6


def test_two_collinear_triples_only_share_the_camera():
    cfg = class_config("PlanarThreePlusThree")
    result = reconstruct5(camera_oracle(cfg), grid_n=GRID)
    assert result.mode is ReconstructionMode.PLANAR3
    assert result.oracle_mismatch <= 1e-6
    assert result.camera_equivalent_only
    assert result.to_dict()["camera_equivalent_only"] is True


def test_four_aligned_points_only_give_a_cross_ratio():
    result = reconstruct5(camera_oracle(class_config("PlanarFourCollinear")), grid_n=GRID)
    assert result.mode is ReconstructionMode.CROSS_RATIO_ONLY
    assert result.config is None
    assert result.cross_ratio_indices == (1, 2, 3, 4)
    # positions 0, 1, 2, 4 along the line
    assert result.cross_ratio == pytest.approx(1.5, abs=1e-8)
    assert result.to_dict()["config"] is None


def test_constant_camera_cannot_be_reconstructed():
    with pytest.raises(ConstantCamera):
        reconstruct5(camera_oracle(class_config("AllCollinear")), grid_n=GRID)


# ── n-point equivalence ──────────────────────────────────────────────

def test_similar_seven_point_configurations_are_equivalent(rng):
    a = random_spatial(12, n=7)
    b, _ = similar(a, rng, scale=0.5)
    report = verify_equivalence_n(a, b, n_samples=30, seed=1)
    assert report.equivalent
    assert report.fit_kind == "similarity"
    assert len(report.subtuples) == 3
    assert report.anchor == (0, 1, 2, 3)


def test_perturbed_point_breaks_equivalence(rng):
    a = random_spatial(13, n=6)
    b, _ = similar(a, rng)
    arr = b.array.copy()
    arr[5] += 0.5
    report = verify_equivalence_n(a, PointConfig.from_array(arr), n_samples=30, seed=1)
    assert not report.equivalent
    assert max(s.distance for s in report.subtuples) > 1e-3


def test_planar_configurations_are_compared_up_to_affinity():
    a = random_planar(14, n=6)
    shear = np.array([[1.0, 0.4, 0.0], [0.0, 1.5, 0.0], [0.0, 0.0, 1.0]])
    b = PointConfig.from_array(a.array @ shear.T)
    report = verify_equivalence_n(a, b, n_samples=30, seed=1)
    assert report.planar
    assert report.fit_kind == "affinity"
    assert report.equivalent


def test_equivalence_needs_matching_sizes():
    with pytest.raises(PreconditionViolated):
        verify_equivalence_n(random_spatial(1, n=6), random_spatial(2, n=7))


@pytest.mark.slow
@pytest.mark.parametrize("n", [6, 7])
@pytest.mark.parametrize("seed", range(400, 420))
def test_random_n_point_pairs(n, seed):
    rng = np.random.default_rng(seed)
    a = random_spatial(seed, n=n)
    b, _ = similar(a, rng, scale=float(rng.uniform(0.5, 3.0)))
    assert verify_equivalence_n(a, b, n_samples=30, seed=1).equivalent
    arr = b.array.copy()
    arr[n - 1] += 0.5
    assert not verify_equivalence_n(a, PointConfig.from_array(arr), n_samples=30, seed=1).equivalent
