"""The M5 embedding, its quadrics, the boundary lines and the real structure."""

from __future__ import annotations

import numpy as np
import pytest

from features.geometry import cross_ratio
from features.moduli import (
    ALL_LINES,
    CANONICAL_ASSIGNMENT,
    CoordinateAssignment,
    LineId,
    P1PointPair,
    Tuple5P1,
    calibrate_coordinates,
    distance_to_line,
    is_real_class,
    line_vanishing_set,
    m5_residual,
    m5_to_tuple,
    mobius_apply,
    phi,
    phi_edge,
    sharing_lines,
    subtuple_cross_ratio,
)
from models.errors import InvalidConfig, NotInU
from utils.projective import projective_distance


def _random_tuple(rng) -> Tuple5P1:
    return Tuple5P1.from_values(list(rng.normal(size=5) + 1j * rng.normal(size=5)))


def test_phi_edge_examples():
    assert phi_edge(P1PointPair.finite(2), P1PointPair.finite(5)) == -3
    assert phi_edge(P1PointPair.finite(7), P1PointPair.infinity()) == -1


def test_phi_lands_on_the_quadrics(rng):
    for _ in range(50):
        p = phi(_random_tuple(rng))
        assert m5_residual(p) <= 1e-9
        assert np.isclose(np.max(np.abs(p.as_array())), 1.0)


def test_phi_is_mobius_invariant(rng):
    worst = 0.0
    for _ in range(1000):
        m = _random_tuple(rng)
        g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        worst = max(worst, projective_distance(phi(m).as_array(), phi(mobius_apply(g, m)).as_array()))
    assert worst <= 1e-9


def test_phi_rejects_three_coincident_points():
    with pytest.raises(NotInU):
        phi(Tuple5P1.from_values([0, 0, 0, 1, 2]))


def test_two_coincident_points_land_on_their_line():
    p = phi(Tuple5P1.from_values([0, 1, 2, 3, 3]))
    w = np.abs(p.as_array())
    assert all(w[k] == 0 for k in (0, 2, 4, 5))
    assert w[1] > 0 and w[3] > 0
    assert distance_to_line(p, LineId(4, 5)) == 0


def test_calibration_finds_the_canonical_assignment():
    assert calibrate_coordinates() == CANONICAL_ASSIGNMENT


def test_other_assignments_violate_the_quadrics(rng):
    swapped = CoordinateAssignment(slots=(0, 1, 2, 3, 5, 4), signs=(1, 1, 1, 1, 1, 1))
    worst = max(m5_residual(phi(_random_tuple(rng)), swapped) for _ in range(10))
    assert worst >= 1e-3


@pytest.mark.parametrize("pair, expected", [
    ((1, 2), {0, 1, 2, 4}),
    ((2, 3), {0, 2, 3, 5}),
    ((3, 4), {0, 1, 3, 4}),
    ((4, 5), {0, 2, 4, 5}),
    ((1, 5), {0, 1, 3, 5}),
    ((1, 3), {2}),
    ((1, 4), {5}),
    ((2, 4), {3}),
    ((2, 5), {1}),
    ((3, 5), {4}),
])
def test_line_vanishing_sets(pair, expected):
    assert line_vanishing_set(LineId(*pair)) == frozenset(expected)


@pytest.mark.parametrize("line", ALL_LINES, ids=str)
def test_coincident_pair_vanishes_on_its_line(rng, line):
    values = list(rng.normal(size=5) + 1j * rng.normal(size=5))
    values[line.j - 1] = values[line.i - 1]
    p = phi(Tuple5P1.from_values(values))
    w = np.abs(p.as_array())
    zero = line_vanishing_set(line)
    assert all(w[k] == 0 for k in zero)
    assert all(w[k] > 1e-6 for k in set(range(6)) - zero)
    assert distance_to_line(p, line) == 0


def test_line_ids_are_ordered_pairs():
    assert LineId.of(4, 2) == LineId(2, 4)
    assert str(LineId(1, 5)) == "L15"
    assert len(ALL_LINES) == 10
    with pytest.raises(InvalidConfig):
        LineId(3, 3)


def test_single_component_lines_share_with_others():
    assert sharing_lines(LineId(1, 3)) == [LineId(1, 2), LineId(2, 3), LineId(4, 5)]
    assert sharing_lines(LineId(1, 2)) == []


def test_single_component_distance_is_only_necessary():
    # m4 = m5 kills w2, so L13 reads as zero although m1 != m3
    p = phi(Tuple5P1.from_values([0, 1, 2, 3, 3]))
    assert distance_to_line(p, LineId(1, 3)) == 0
    assert distance_to_line(p, LineId(1, 2)) > 0.01


def test_distance_to_line_is_positive_off_the_boundary(rng):
    p = phi(_random_tuple(rng))
    assert all(distance_to_line(p, l) > 1e-6 for l in ALL_LINES)


def test_real_classes():
    assert is_real_class(phi(Tuple5P1.from_values([0.0, 1.0, 2.5, -3.0, 7.0])))
    angles = [0.1, 0.9, 2.0, 3.3, 5.0]
    assert is_real_class(phi(Tuple5P1.from_values([np.exp(1j * a) for a in angles])))
    assert not is_real_class(phi(Tuple5P1.from_values([0, 1, 1j, 2 + 1j, -1 + 3j])))


def test_m5_to_tuple_recovers_the_class(rng):
    for _ in range(20):
        p = phi(_random_tuple(rng))
        rep = m5_to_tuple(p)
        assert projective_distance(phi(rep).as_array(), p.as_array()) < 1e-8
        assert rep.points[1] == P1PointPair.finite(0.0)
        assert rep.points[3] == P1PointPair.infinity()


def test_m5_to_tuple_on_normalized_input():
    p = phi(Tuple5P1((
        P1PointPair.finite(3 + 1j),
        P1PointPair.finite(0),
        P1PointPair.finite(1),
        P1PointPair.infinity(),
        P1PointPair.finite(-2j),
    )))
    rep = m5_to_tuple(p)
    assert np.isclose(rep.points[0].a / rep.points[0].b, 3 + 1j)
    assert np.isclose(rep.points[4].a / rep.points[4].b, -2j)


def test_m5_to_tuple_rejects_boundary_points():
    with pytest.raises(NotInU):
        m5_to_tuple(phi(Tuple5P1.from_values([0, 1, 2, 3, 3])))


@pytest.mark.parametrize("idx", [(1, 2, 3, 4), (2, 3, 4, 5), (1, 3, 4, 5), (5, 1, 2, 4)])
def test_subtuple_cross_ratio_matches_the_tuple(rng, idx):
    values = list(rng.normal(size=5) + 1j * rng.normal(size=5))
    p = phi(Tuple5P1.from_values(values))
    expected = cross_ratio([values[k - 1] for k in idx])
    assert np.isclose(subtuple_cross_ratio(p, idx), expected, rtol=1e-7)
