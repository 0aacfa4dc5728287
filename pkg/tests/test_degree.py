"""Image degree per configuration class, exact and by root counting."""

from __future__ import annotations

import numpy as np
import pytest

from features.camera import CONSTANT, DegreeMethod, compute_degree, deck_directions, predicted_degree
from features.geometry import PointConfig, classify
from tests.conftest import CLASS_FIXTURES, class_config

GCD_DEGREES = {
    "SpatialGeneric": 0,
    "SpatialFourCoplanar": 0,
    "SpatialThreeCollinear": 2,
    "PlanarGeneric": 0,
    "PlanarThreeCollinear": 2,
    "PlanarThreePlusThree": 4,
    "PlanarFourCollinear": 6,
    "AllCollinear": 10,
}


@pytest.mark.parametrize("tag", list(CLASS_FIXTURES))
def test_degree_by_class(tag):
    expected = CLASS_FIXTURES[tag][1]
    report = compute_degree(class_config(tag), seed=0)
    assert report.image_degree == expected
    assert report.gcd_degree == GCD_DEGREES[tag]
    assert report.config_tag == tag
    assert report.method is DegreeMethod.EXACT_GCD
    assert report.root_count_image_degree == expected
    assert predicted_degree(classify(class_config(tag))) == expected


@pytest.mark.parametrize("tag", list(CLASS_FIXTURES))
def test_degree_bookkeeping(tag):
    report = compute_degree(class_config(tag), seed=1)
    if report.image_degree == CONSTANT:
        assert report.map_degree == 0
        return
    assert report.image_degree * report.map_degree == report.degree_of_forms - report.gcd_degree
    assert report.map_degree == (2 if tag.startswith("Planar") else 1)


def test_parallel_segments_do_not_lower_the_degree():
    cfg = PointConfig.from_rationals([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 1], [3, 1, 1]])
    report = compute_degree(cfg)
    assert report.gcd_degree == 0
    assert report.image_degree == 10


def test_float_input_uses_shortest_decimals():
    cfg = PointConfig.from_array([[0.0, 0.0, 0.0], [0.5, 0.0, 0.0], [0.0, 0.25, 0.0], [0.0, 0.0, 1.5], [0.1, 0.2, 0.3]])
    assert compute_degree(cfg).image_degree == 10


def test_report_serializes_the_cross_check():
    payload = compute_degree(class_config("PlanarGeneric"), trials=3).to_dict()
    assert payload["image_degree"] == 5
    assert payload["map_degree"] == 2
    assert payload["cross_check"]["method"] == "HyperplaneRootCount"
    assert len(payload["cross_check"]["trials"]) == 3


def test_deck_map_is_the_half_turn():
    d = np.array([[0.6, 0.0, 0.8], [0.0, 1.0, 0.0]])
    flipped = deck_directions(d, np.array([0.0, 0.0, 1.0]))
    assert np.allclose(flipped, [[-0.6, 0.0, 0.8], [0.0, -1.0, 0.0]])
