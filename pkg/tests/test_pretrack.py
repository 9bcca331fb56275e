from __future__ import annotations

from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given

from pushtrack import families
from pushtrack.curve import RIGHT, make_diagram
from pushtrack.errors import HypothesisViolated, NotFilling, NotInReducedCone
from pushtrack.incidence import incidence_matrix
from pushtrack.pretrack import (
    BIGON_TRACK,
    PRETRACK_ONLY,
    SIDE_A,
    SIDE_B,
    TRAIN_TRACK,
    Region,
    build_pretrack,
    carried_curve_path,
    carried_curve_weights,
    classify_regions,
    is_closed_train_path,
    reduced_to_full,
)

from conftest import analyzable


def census_of(curve):
    return classify_regions(build_pretrack(curve))


class TestCensus:
    def test_gamma0(self):
        c = census_of(families.gamma0())
        assert (c.trigons, c.punctured_monogons) == (5, 1)
        assert c.monogons == c.bigons == c.higher == c.nullgons == 0
        assert c.track_class == TRAIN_TRACK
        assert c.euler_sum == Fraction(-3)

    def test_lifted_curve_genus_three(self):
        c = census_of(families.fixed_family_curve(3))
        assert (c.trigons, c.punctured_monogons) == (4 * 3 - 3, 1)
        assert c.track_class == TRAIN_TRACK
        assert c.euler_sum == Fraction(-5)

    @pytest.mark.parametrize("g", range(2, 7))
    def test_lifted_curves(self, g):
        c = census_of(families.fixed_family_curve(g))
        assert c.trigons == 4 * g - 3
        assert c.track_class == TRAIN_TRACK

    @pytest.mark.parametrize("n", range(1, 7))
    def test_winding_curve_has_monogons(self, n):
        c = census_of(families.winding_curve(n))
        assert c.track_class == PRETRACK_ONLY
        assert c.monogons >= 1

    def test_bigon_index_is_zero(self):
        assert Region((), 2, 0, False, None).euler_index == 0

    def test_json_keys(self):
        j = census_of(families.gamma0()).to_json()
        assert j["euler_sum"] == "-3/1"
        assert set(j) >= {"nullgons", "monogons", "bigons", "trigons", "higher", "punctured_monogons", "punctured_nullgons", "track_class"}


class TestBuild:
    def test_rejects_non_filling(self):
        g0 = families.gamma0()
        d = make_diagram(g0.word, [c.first_passage_inbound for c in g0.crossings], punctures={"f:c1.q0": 2})
        with pytest.raises(NotFilling):
            build_pretrack(d)

    def test_rejects_small_surface(self):
        with pytest.raises(HypothesisViolated):
            build_pretrack(make_diagram([(1, 1), (1, 2)], [RIGHT]))

    def test_branch_kinds(self):
        track = build_pretrack(families.fixed_family_curve(3))
        kinds = Counter(b.kind for b in track.branches.values())
        assert kinds["eye_d"] == kinds["eye_l"] == kinds["eye_r"] == 1
        for k in ("cross_a", "cross_b", "cross_c"):
            assert kinds[k] == 6

    def test_switches_have_two_sides(self):
        track = build_pretrack(families.gamma0())
        for sw in track.switches.values():
            sides = {track.side(e) for e in sw.rotation}
            assert sides == {SIDE_A, SIDE_B}
            assert sw.valence >= 3


class TestWeights:
    def test_zero(self):
        track = build_pretrack(families.gamma0())
        full = reduced_to_full(track, [0] * 12)
        assert all(v == 0 for v in full.weights.values())

    def test_gamma0_carried_curve(self):
        track = build_pretrack(families.gamma0())
        w = carried_curve_weights(track)
        # sigma runs once along d, through a_3 and b_3, and its subloop at
        # crossing 3 passes a_2 once
        assert w == (1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1, 0)
        full = reduced_to_full(track, w)
        assert all(v >= 0 for v in full.weights.values())
        assert all(v == 0 for v in full.switch_defects(track).values())

    def test_unit_vector_is_self_consistent(self):
        track = build_pretrack(families.gamma0())
        w = [1] + [0] * 11
        try:
            full = reduced_to_full(track, w)
        except NotInReducedCone:
            return
        assert full.restrict(track) == tuple(Fraction(x) for x in w)

    def test_negative_rejected(self):
        track = build_pretrack(families.gamma0())
        with pytest.raises(NotInReducedCone):
            reduced_to_full(track, [-1] + [0] * 11)

    def test_wrong_length(self):
        track = build_pretrack(families.gamma0())
        with pytest.raises(ValueError):
            reduced_to_full(track, [0] * 11)

    def test_off_subspace_rejected(self):
        # b_1 alone cannot balance the switch it enters
        track = build_pretrack(families.gamma0())
        w = [0] * 12
        w[4] = 1
        with pytest.raises(NotInReducedCone):
            reduced_to_full(track, w)


@given(analyzable())
def test_euler_identity(d):
    c = census_of(d)
    assert c.euler_sum == 2 - 2 * d.surface.genus - (d.surface.punctures + 1)


@given(analyzable())
def test_region_count(d):
    track = build_pretrack(d)
    assert len(track.regions) == len(d.faces) + d.self_intersections + 2
    marked = [r for r in track.regions if r.marked]
    assert len(marked) == 1 and marked[0].cusps == 1


@given(analyzable())
def test_track_class_matches_indices(d):
    track = build_pretrack(d)
    bad = [r for r in track.regions if r.euler_index >= 0]
    if track.track_class == TRAIN_TRACK:
        assert not bad
    elif track.track_class == BIGON_TRACK:
        assert bad and all(r.cusps == 2 and r.punctures == 0 for r in bad)
    else:
        assert any(not (r.cusps == 2 and r.punctures == 0) for r in bad)


@given(analyzable())
def test_carried_curve_is_a_weight_function(d):
    track = build_pretrack(d)
    assert is_closed_train_path(track, carried_curve_path(track))
    w = carried_curve_weights(track)
    assert any(w)
    assert w[0] == 1  # goes around the marked point exactly once
    full = reduced_to_full(track, w)
    assert full.restrict(track) == tuple(Fraction(x) for x in w)
    assert all(v == 0 for v in full.switch_defects(track).values())


@given(analyzable(max_crossings=5))
def test_incidence_matrix_preserves_the_cone(d):
    track = build_pretrack(d)
    m = incidence_matrix(d).data
    w = list(carried_curve_weights(track))
    for _ in range(3):
        w = [int(x) for x in m.dot(w)]
        reduced_to_full(track, w)
