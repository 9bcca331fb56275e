from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pushtrack import families
from pushtrack.analysis import analyze
from pushtrack.bounds import (
    algebraic_lower_bounds,
    dilatation_bounds,
    least_dilatation_bounds,
    power_curve_bounds,
)
from pushtrack.curve import SurfaceSig
from pushtrack.errors import BadParameters, HypothesisViolated

from conftest import analyzable


def close(a, b):
    return math.isclose(a, b, rel_tol=1e-12)


class TestDilatationBounds:
    def test_main_case(self):
        r = dilatation_bounds(3, SurfaceSig(2, 0), "primitive")
        assert close(r.log_lower, math.log(4) / 5)
        assert close(r.log_lower, 0.27725887222397812)
        assert close(r.log_upper, 3 * math.log(9))
        assert not r.warnings

    def test_square_case(self):
        assert close(dilatation_bounds(2, SurfaceSig(0, 4), "square_S04_S12").log_lower, math.log(2) / 5)

    def test_power_case(self):
        assert dilatation_bounds(1, SurfaceSig(1, 1), "power234_S11").log_lower == 0

    def test_class_surface_mismatch(self):
        with pytest.raises(HypothesisViolated):
            dilatation_bounds(5, SurfaceSig(2, 0), "square_S04_S12")
        with pytest.raises(HypothesisViolated):
            dilatation_bounds(5, SurfaceSig(0, 4), "power234_S11")

    def test_small_surface(self):
        with pytest.raises(HypothesisViolated):
            dilatation_bounds(3, SurfaceSig(0, 3))

    def test_unknown_class(self):
        with pytest.raises(BadParameters):
            dilatation_bounds(3, SurfaceSig(2, 0), "cube")

    def test_euler_warning(self):
        assert dilatation_bounds(2, SurfaceSig(2, 0)).warnings
        assert not dilatation_bounds(3, SurfaceSig(2, 0)).warnings
        assert not dilatation_bounds(2, SurfaceSig(0, 4)).warnings

    def test_huge_self_intersection(self):
        r = dilatation_bounds(5000, SurfaceSig(3, 0))
        assert r.upper == math.inf or r.upper is None or r.upper > 0
        assert r.to_json()["upper"] is None


class TestLeast:
    def test_genus_two(self):
        r = least_dilatation_bounds(SurfaceSig(2, 0))
        assert close(r.log_lower, math.log(4) / 5) and close(r.log_upper, 2 * math.log(11))
        assert close(r.log_upper, 4.7957905455967413)
        assert r.upper_strict

    def test_stratified(self):
        r = least_dilatation_bounds(SurfaceSig(3, 0), k=8)
        assert close(r.log_lower, math.log(9) / 5) and close(r.log_upper, math.log(8) + 3 * math.log(11))
        assert close(r.log_lower, 0.43944491546724388) and close(r.log_upper, 9.2731273600749482)

    def test_punctured(self):
        assert close(least_dilatation_bounds(SurfaceSig(1, 2)).log_lower, math.log(3) / 5)
        assert least_dilatation_bounds(SurfaceSig(1, 2)).log_upper is None

    @pytest.mark.parametrize("surface,k", [(SurfaceSig(3, 0), 7), (SurfaceSig(2, 0), 10), (SurfaceSig(3, 1), 10)])
    def test_stratified_hypotheses(self, surface, k):
        with pytest.raises(HypothesisViolated):
            least_dilatation_bounds(surface, k)

    @given(st.integers(2, 60))
    def test_monotone_in_genus(self, g):
        a, b = least_dilatation_bounds(SurfaceSig(g, 0)), least_dilatation_bounds(SurfaceSig(g + 1, 0))
        assert a.log_lower <= b.log_lower and a.log_lower < a.log_upper

    @given(st.integers(3, 20), st.integers(0, 500))
    def test_monotone_in_k(self, g, extra):
        k = 3 * g - 1 + extra
        a, b = least_dilatation_bounds(SurfaceSig(g, 0), k), least_dilatation_bounds(SurfaceSig(g, 0), k + 1)
        assert a.log_lower <= b.log_lower and a.log_lower < a.log_upper

    @given(st.integers(0, 30), st.integers(0, 30))
    def test_general_surfaces(self, g, n):
        s = SurfaceSig(g, n)
        if not s.satisfies_kra:
            with pytest.raises(HypothesisViolated):
                least_dilatation_bounds(s)
            return
        r = least_dilatation_bounds(s)
        assert r.log_upper is None or r.log_lower <= r.log_upper


class TestAlgebraic:
    def test_lower_central_at_eight(self):
        r = algebraic_lower_bounds(8, "lower_central", SurfaceSig(3, 0))
        assert r.log_bound == 0

    def test_derived_at_four(self):
        r = algebraic_lower_bounds(4, "derived", SurfaceSig(3, 0))
        assert r.log_simplified == 0
        assert close(r.log_bound, math.log(2) / 5)

    def test_lower_central_at_64(self):
        assert close(algebraic_lower_bounds(64, "lower_central", SurfaceSig(2, 1)).log_bound, math.log(2) / 5)

    def test_vacuous(self):
        r = algebraic_lower_bounds(3, "lower_central", SurfaceSig(3, 0))
        assert r.vacuous and r.log_bound == 0

    def test_punctured_form(self):
        r = algebraic_lower_bounds(100, "lower_central_punctured", SurfaceSig(2, 2))
        assert close(r.log_bound, math.log(100 / 9) / 5)
        with pytest.raises(HypothesisViolated):
            algebraic_lower_bounds(100, "lower_central_punctured", SurfaceSig(2, 0))

    def test_weak_surfaces(self):
        assert algebraic_lower_bounds(4096, "lower_central", SurfaceSig(1, 1)).weak_form
        assert algebraic_lower_bounds(4096, "lower_central", SurfaceSig(0, 4)).weak_form
        assert not algebraic_lower_bounds(4096, "lower_central", SurfaceSig(0, 5)).weak_form
        strong = algebraic_lower_bounds(4096, "lower_central", SurfaceSig(2, 0))
        weak = algebraic_lower_bounds(4096, "lower_central", SurfaceSig(1, 1))
        assert weak.log_bound < strong.log_bound

    def test_errors(self):
        with pytest.raises(BadParameters):
            algebraic_lower_bounds(0, "derived", SurfaceSig(3, 0))
        with pytest.raises(BadParameters):
            algebraic_lower_bounds(5, "upper_central", SurfaceSig(3, 0))
        with pytest.raises(HypothesisViolated):
            algebraic_lower_bounds(5, "derived", SurfaceSig(1, 0))

    @given(st.integers(4, 200))
    def test_simplified_is_weaker(self, k):
        r = algebraic_lower_bounds(k, "derived", SurfaceSig(3, 0))
        assert r.log_simplified <= r.log_bound + 1e-15


class TestPowerCurve:
    def test_intersection_bound(self):
        assert power_curve_bounds(3, 2, 1.0).self_int_bound == 13

    def test_identity_power(self):
        r = power_curve_bounds(7, 1, 2.5)
        assert r.log_dilatation == 2.5 and r.self_int_bound == 7

    def test_constant(self):
        assert close(power_curve_bounds(2, 4, math.log(2)).c, math.log(2) / 2)
        assert close(power_curve_bounds(2, 4, math.log(2)).c, 0.34657359027997264)

    @given(st.integers(1, 100), st.integers(1, 100), st.floats(0.01, 50))
    def test_guaranteed_below_actual(self, i, m, log_lambda):
        r = power_curve_bounds(i, m, log_lambda)
        assert r.self_int_bound <= 2 * m * m * i
        assert r.log_guaranteed <= r.log_dilatation * (1 + 1e-12)

    def test_errors(self):
        with pytest.raises(BadParameters):
            power_curve_bounds(0, 1, 1.0)


@given(analyzable(max_crossings=5))
def test_sandwich_on_random_curves(d):
    rep = analyze(d)
    if rep.enclosure is None or rep.enclosure_label != "certified dilatation enclosure":
        return
    tol = rep.enclosure.hi - rep.enclosure.lo
    assert rep.bounds.log_lower <= math.log(rep.enclosure.lo + tol + 1e-12)
    assert math.log(rep.enclosure.hi) <= rep.bounds.log_upper
    assert rep.verdict == "pass"


def test_sandwich_on_families():
    for g in range(2, 6):
        rep = analyze(families.fixed_family_curve(g))
        assert rep.verdict == "pass"
