"""Necessary conditions for pods of mobility >= 2."""

from __future__ import annotations

import numpy as np
import pytest

from features.pentapod import (
    CAVEAT,
    Pentapod,
    camera_check,
    check_condition_a,
    check_condition_b,
    check_condition_c,
    check_condition_d,
    necessary_condition_report,
)
from features.pentapod.conditions import index_splits
from features.steps import StepTracker
from models.errors import PreconditionViolated
from tests.conftest import random_planar, random_rotation, random_spatial, similar

CHECKS = {"a": check_condition_a, "b": check_condition_b, "c": check_condition_c, "d": check_condition_d}


def _similar_pod(rng) -> Pentapod:
    platform = random_spatial(31)
    base, _ = similar(platform, rng, scale=1.8)
    return Pentapod.from_arrays(platform.array, base.array)


def _affine_pod() -> Pentapod:
    platform = random_planar(32)
    shear = np.array([[1.0, 0.9, 0.0], [0.0, 0.6, 0.0], [0.0, 0.0, 1.0]])
    return Pentapod.from_arrays(platform.array, platform.array @ shear.T + np.array([1.0, 2.0, 0.0]))


def _collinear_coincident_pod() -> Pentapod:
    platform = [[0, 0, 0], [1, 0, 0], [2.5, 0, 0], [0.3, 1.2, 0.4], [-0.7, 0.5, 1.1]]
    base = [[0.2, 0.1, 0], [1.3, -0.4, 0.6], [0.5, 1.5, -0.2], [2, 2, 2], [2, 2, 2]]
    return Pentapod.from_arrays(platform, base)


def _parallel_lines_pod() -> Pentapod:
    platform = [[0, 0, 0], [1, 0, 0], [3, 0, 0], [0, 1, 0], [2, 1, 0]]
    base = [[0, 0, 0], [2, 0, 0], [3, 0, 0], [0, 0, 1], [5, 0, 1]]
    return Pentapod.from_arrays(platform, base)


def _holding(pp: Pentapod) -> list[str]:
    return [key for key, check in CHECKS.items() if check(pp).holds]


# ── Planted witnesses ────────────────────────────────────────────────

def test_similar_pod_meets_only_condition_a(rng):
    pp = _similar_pod(rng)
    assert _holding(pp) == ["a"]
    cond = check_condition_a(pp)
    assert cond.transform.scale == pytest.approx(1.8)
    assert cond.to_dict()["holds"] is True


def test_affine_planar_pod_meets_only_condition_b():
    pp = _affine_pod()
    assert _holding(pp) == ["b"]
    cond = check_condition_b(pp)
    assert cond.coplanar
    assert cond.residual <= 1e-9


def test_collinear_coincident_pod_meets_only_condition_c():
    pp = _collinear_coincident_pod()
    assert _holding(pp) == ["c"]
    cond = check_condition_c(pp)
    assert cond.m == 3
    assert cond.index_permutation == (0, 1, 2, 3, 4)
    assert not cond.swapped


def test_condition_c_sees_the_interchanged_pod():
    cond = check_condition_c(_collinear_coincident_pod().swapped())
    assert cond.holds
    assert cond.swapped
    assert cond.m == 3
    assert cond.index_permutation == (0, 1, 2, 3, 4)


def test_parallel_lines_pod_meets_only_condition_d():
    pp = _parallel_lines_pod()
    assert _holding(pp) == ["d"]
    cond = check_condition_d(pp)
    assert cond.partition == ((0, 1, 2), (3, 4))
    assert np.allclose(np.abs(cond.lines["platform"]["direction"]), [1, 0, 0])
    assert np.allclose(np.abs(cond.lines["base"]["direction"]), [1, 0, 0])


def test_condition_d_needs_the_same_split_on_both_sides():
    platform = _parallel_lines_pod().platform.array
    # base lines through {0, 1, 3} and {2, 4}, platform lines through {0, 1, 2} and {3, 4}
    base = [[0, 0, 0], [2, 0, 0], [0, 0, 1], [3, 0, 0], [5, 0, 1]]
    cond = check_condition_d(Pentapod.from_arrays(platform, base))
    assert not cond.holds
    assert cond.partition is None


def test_condition_c_with_the_whole_platform_on_a_line(rng):
    platform = [[k, 0, 0] for k in (0, 1, 2.5, 4, 7)]
    cond = check_condition_c(Pentapod.from_arrays(platform, rng.normal(size=(5, 3))))
    assert cond.holds
    assert cond.m == 5
    assert cond.index_permutation == (0, 1, 2, 3, 4)
    assert not cond.swapped


@pytest.mark.parametrize("seed", [40, 41, 42])
def test_generic_pods_meet_no_condition(seed):
    rng = np.random.default_rng(seed)
    pp = Pentapod.from_arrays(rng.normal(size=(5, 3)), rng.normal(size=(5, 3)))
    assert _holding(pp) == []
    assert check_condition_c(pp).residual > 1e-3
    assert check_condition_d(pp).residual > 1e-3


def test_conditions_are_invariant_under_rigid_motions(rng):
    generic = np.random.default_rng(44)
    pods = [
        _similar_pod(rng), _affine_pod(), _collinear_coincident_pod(), _parallel_lines_pod(),
        Pentapod.from_arrays(generic.normal(size=(5, 3)), generic.normal(size=(5, 3))),
    ]
    for pp in pods:
        platform = pp.platform.array @ random_rotation(rng).T + rng.normal(size=3)
        base = pp.base.array @ random_rotation(rng).T + rng.normal(size=3)
        assert _holding(Pentapod.from_arrays(platform, base)) == _holding(pp)


def test_non_planar_pod_skips_the_affinity_fit():
    cond = check_condition_b(_collinear_coincident_pod())
    assert not cond.holds
    assert cond.residual is None
    assert not cond.coplanar


def test_index_splits_list_each_split_once():
    assert index_splits(5) == [
        ((0, 1, 2), (3, 4)), ((0, 1, 3), (2, 4)), ((0, 1, 4), (2, 3)), ((0, 2, 3), (1, 4)),
        ((0, 2, 4), (1, 3)), ((0, 3, 4), (1, 2)), ((1, 2, 3), (0, 4)), ((1, 2, 4), (0, 3)),
        ((1, 3, 4), (0, 2)), ((2, 3, 4), (0, 1)),
    ]
    assert len(index_splits(6)) == 15 + 10


def test_condition_tolerance_is_configurable():
    pp = _parallel_lines_pod()
    arr = pp.base.array.copy()
    arr[4, 2] += 1e-6
    nudged = Pentapod.from_arrays(pp.platform.array, arr)
    assert not check_condition_d(nudged).holds
    assert check_condition_d(nudged, tol=1e-4).holds


# ── Camera check and report ──────────────────────────────────────────

def test_camera_images_agree_for_a_similar_pod(rng):
    check = camera_check(_similar_pod(rng), n_samples=20, seed=1)
    assert check.holds
    assert check.skipped is None


def test_camera_check_is_skipped_for_coincident_anchors():
    check = camera_check(_collinear_coincident_pod(), n_samples=10)
    assert not check.holds
    assert "coincident" in check.skipped


def test_report_for_a_similar_pod(rng):
    tracker = StepTracker("pentapod-test")
    report = necessary_condition_report(_similar_pod(rng), n_samples=20, seed=1, tracker=tracker)
    payload = report.to_dict()
    assert payload["conditions_holding"] == ["a"]
    assert payload["verdict"] == "mobility >= 2 possible"
    assert payload["caveat"] == CAVEAT
    assert payload["camera_images_equal"]["holds"] is True
    assert [s["name"] for s in payload["steps"]] == [
        "Condition (a): Similarity", "Condition (b): Planar Affinity",
        "Condition (c): Collinear And Coincident", "Condition (d): Parallel Lines", "Camera Images",
    ]


def test_report_for_a_generic_pod():
    rng = np.random.default_rng(43)
    pp = Pentapod.from_arrays(rng.normal(size=(5, 3)), rng.normal(size=(5, 3)))
    report = necessary_condition_report(pp, n_samples=20, seed=1)
    assert report.holding == []
    assert report.verdict == "mobility >= 2 excluded"
    assert not report.camera_images_equal.holds


def test_six_leg_pods_compare_subtuples(rng):
    platform = random_spatial(33, n=6)
    base, _ = similar(platform, rng)
    pp = Pentapod.from_arrays(platform.array, base.array)
    assert check_condition_a(pp).holds
    assert camera_check(pp, n_samples=20, seed=1).holds


def test_report_for_an_affine_planar_pod():
    report = necessary_condition_report(_affine_pod(), n_samples=30, seed=1)
    assert report.holding == ["b"]
    assert report.camera_images_equal.holds


def test_equal_camera_images_come_with_similarity_or_affinity(rng):
    generic = np.random.default_rng(45)
    pods = [
        _similar_pod(rng), _affine_pod(),
        Pentapod.from_arrays(generic.normal(size=(5, 3)), generic.normal(size=(5, 3))),
    ]
    agreeing = 0
    for pp in pods:
        report = necessary_condition_report(pp, n_samples=30, seed=1)
        if report.camera_images_equal.holds:
            agreeing += 1
            assert {"a", "b"} & set(report.holding)
    assert agreeing == 2


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(500, 550))
def test_random_pods_report_no_condition(seed):
    rng = np.random.default_rng(seed)
    pp = Pentapod.from_arrays(rng.normal(size=(5, 3)), rng.normal(size=(5, 3)))
    report = necessary_condition_report(pp, n_samples=20, seed=1)
    assert report.holding == []
    assert not report.camera_images_equal.holds


# ── Validation ───────────────────────────────────────────────────────

def test_pods_need_five_legs():
    with pytest.raises(PreconditionViolated):
        Pentapod.from_arrays(random_spatial(1, n=4).array, random_spatial(2, n=4).array)


def test_platform_and_base_sizes_must_match():
    with pytest.raises(PreconditionViolated):
        Pentapod.from_arrays(random_spatial(1).array, random_spatial(2, n=6).array)


def test_leg_lengths_are_validated():
    platform, base = random_spatial(1).array, random_spatial(2).array
    with pytest.raises(PreconditionViolated):
        Pentapod.from_arrays(platform, base, leg_lengths=[1.0, 2.0])
    with pytest.raises(PreconditionViolated):
        Pentapod.from_arrays(platform, base, leg_lengths=[1.0, 2.0, 0.0, 1.0, 1.0])
    pp = Pentapod.from_arrays(platform, base, leg_lengths=[1, 2, 3, 4, 5])
    assert pp.leg_lengths == (1.0, 2.0, 3.0, 4.0, 5.0)
    assert pp.current_lengths().shape == (5,)
