"""Camera evaluation, sampling, CSV export and image comparison."""

from __future__ import annotations

import numpy as np
import pytest

from features.camera import (
    CSV_HEADER,
    EvalMode,
    ExactM5Point,
    build_forms,
    camera_eval,
    camera_eval_param,
    camera_sample,
    camera_vector,
    degenerate_directions,
    image_distance,
    image_distance_report,
    image_from_csv,
    image_to_csv,
    sampled_image_distance,
)
from features.geometry import Direction, P1Param, PointConfig
from features.geometry.sphere import param_of_direction
from features.moduli import LineId, distance_to_line, m5_residual
from models.errors import DegenerateDirection, InvalidConfig, PreconditionViolated
from tests.conftest import class_config, random_planar, random_spatial, similar
from utils.projective import projective_distance


def _directions(rng, n):
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


# ── Evaluation ───────────────────────────────────────────────────────

def test_camera_values_lie_on_m5(spatial_generic, rng):
    for eps in _directions(rng, 100):
        p = camera_eval(spatial_generic, Direction.from_array(eps, normalize=True))
        assert m5_residual(p) <= 1e-8


def test_camera_is_rotation_equivariant(spatial_generic, rng):
    moved, r = similar(spatial_generic, rng, scale=0.4)
    for eps in _directions(rng, 30):
        here = camera_vector(spatial_generic, eps)
        there = camera_vector(moved, r @ eps)
        assert projective_distance(here, there) < 1e-8


def test_direction_along_a_segment_lands_on_its_line(spatial_generic):
    arr = spatial_generic.array
    eps = Direction.from_array(arr[3] - arr[4], normalize=True)
    assert distance_to_line(camera_eval(spatial_generic, eps), LineId(4, 5)) < 1e-10


def test_collinear_configuration_has_a_constant_camera(rng):
    cfg = class_config("AllCollinear")
    values = [camera_vector(cfg, eps) for eps in _directions(rng, 10)]
    assert max(projective_distance(values[0], v) for v in values[1:]) < 1e-8


def test_collinear_triple_axis_is_degenerate():
    cfg = class_config("SpatialThreeCollinear")
    axes = degenerate_directions(cfg)
    assert len(axes) == 1
    assert np.allclose(np.abs(axes[0]), [1, 0, 0])
    with pytest.raises(DegenerateDirection):
        camera_eval(cfg, Direction.of(1.0, 0.0, 0.0))


def test_camera_needs_five_points():
    with pytest.raises(InvalidConfig):
        camera_vector(random_spatial(1, n=6), np.array([0.0, 0.0, 1.0]))


def test_float_and_parameter_routes_agree(spatial_generic, rng):
    for eps in _directions(rng, 30):
        d = Direction.from_array(eps, normalize=True)
        by_param = camera_eval_param(spatial_generic, param_of_direction(d))
        assert projective_distance(by_param.as_array(), camera_eval(spatial_generic, d).as_array()) < 1e-8


def test_planar_camera_is_invariant_under_the_half_turn(rng):
    cfg = random_planar(5)
    for _ in range(20):
        s, t = rng.normal(size=2) + 1j * rng.normal(size=2)
        a = camera_eval_param(cfg, P1Param(complex(s), complex(t))).as_array()
        b = camera_eval_param(cfg, P1Param(complex(-s), complex(t))).as_array()
        assert projective_distance(a, b) < 1e-10


def test_exact_mode_matches_float_mode(pyramid):
    p = P1Param(1 + 0j, 2 + 1j)
    exact = camera_eval_param(pyramid, p, EvalMode.EXACT)
    assert isinstance(exact, ExactM5Point)
    assert projective_distance(exact.to_float().as_array(), camera_eval_param(pyramid, p).as_array()) < 1e-10
    assert all(isinstance(pair, list) and len(pair) == 2 for pair in exact.to_dict()["w"])


def test_pyramid_forms_have_no_common_factor(pyramid):
    forms = build_forms(pyramid)
    assert len(forms.raw) == 6
    assert all(f.degree() <= 10 for f in forms.raw)
    assert forms.gcd_degree == 0
    assert forms.cancelled_degree == 10


# ── Sampling and export ──────────────────────────────────────────────

def test_camera_sample_is_deterministic(pyramid):
    first = camera_sample(pyramid, 50, seed=3)
    second = camera_sample(pyramid, 50, seed=3)
    assert len(first.samples) + first.skipped == 50
    assert first.claimed_degree == 10
    assert [s.value for s in first.samples] == [s.value for s in second.samples]


def test_camera_sample_records_parameters(pyramid):
    curve = camera_sample(pyramid, 10, seed=0)
    for sample in curve.samples:
        value = camera_eval_param(pyramid, sample.param).as_array()
        assert projective_distance(value, sample.value.as_array()) < 1e-8


def test_csv_export_reads_back(pyramid, tmp_path):
    curve = camera_sample(pyramid, 25, seed=1)
    path = tmp_path / "pyramid.csv"
    image_to_csv(curve, path)
    assert path.read_text().splitlines()[0] == ",".join(CSV_HEADER)

    directions, values = image_from_csv(path)
    assert directions.shape == (len(curve.samples), 3)
    assert values.shape == (len(curve.samples), 6)
    assert np.array_equal(values[0], curve.samples[0].value.as_array())


def test_csv_with_foreign_header_is_rejected(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(InvalidConfig):
        image_from_csv(path)


# ── Image comparison ─────────────────────────────────────────────────

def test_similar_configurations_share_an_image(spatial_generic, rng):
    moved, _ = similar(spatial_generic, rng, scale=1.7)
    report = image_distance_report(spatial_generic, moved, n=30, seed=2)
    assert report.distance <= 1e-7
    assert report.samples > 0


def test_planar_affine_images_coincide(planar_generic):
    shear = np.array([[1.0, 0.6, 0.0], [0.0, 0.8, 0.0], [0.0, 0.0, 1.0]])
    sheared = PointConfig.from_array(planar_generic.array @ shear.T)
    assert image_distance(planar_generic, sheared, n=30, seed=2) <= 1e-7


def test_perturbed_configuration_has_a_different_image(spatial_generic):
    arr = spatial_generic.array.copy()
    arr[4] += np.array([0.3, -0.2, 0.4])
    assert image_distance(spatial_generic, PointConfig.from_array(arr), n=30, seed=2) > 1e-3


def test_sample_file_distance_is_one_sided(pyramid, tmp_path):
    path = tmp_path / "pyramid.csv"
    image_to_csv(camera_sample(pyramid, 15, seed=4), path)
    _, values = image_from_csv(path)
    result = sampled_image_distance(values, pyramid, n=30, seed=2)
    assert result.distance <= 1e-7
    assert result.samples == len(values)


def test_constant_cameras_cannot_be_compared(pyramid):
    with pytest.raises(PreconditionViolated):
        image_distance(class_config("AllCollinear"), pyramid, n=10)


def test_planar_non_affine_perturbation_changes_the_image(planar_generic):
    arr = planar_generic.array.copy()
    arr[4, :2] += np.array([0.35, -0.25])
    assert image_distance(planar_generic, PointConfig.from_array(arr), n=30, seed=2) > 1e-3


def _four_on_a_line(positions, apex):
    return PointConfig.from_array([[x, 0.0, 0.0] for x in positions] + [apex])


def test_four_collinear_images_agree_when_cross_ratios_agree():
    base = _four_on_a_line([0.0, 1.0, 2.0, 4.0], [0.0, 1.0, 0.0])
    # x ↦ x / (x + 1) keeps the cross ratio of the aligned four
    moved = _four_on_a_line([0.0, 0.5, 2.0 / 3.0, 0.8], [1.0, -3.0, 0.0])
    assert image_distance(base, moved, n=30, seed=2) <= 1e-7


def test_four_collinear_images_differ_when_cross_ratios_differ():
    base = _four_on_a_line([0.0, 1.0, 2.0, 4.0], [0.0, 1.0, 0.0])
    other = _four_on_a_line([0.0, 1.0, 3.0, 4.0], [0.0, 1.0, 0.0])
    assert image_distance(base, other, n=30, seed=2) > 1e-3
