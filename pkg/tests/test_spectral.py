from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pushtrack import families
from pushtrack.acceptance import brute_force_primitive
from pushtrack.curve import rotate_basepoint
from pushtrack.errors import NotPrimitive
from pushtrack.incidence import identity, incidence_matrix, pass_matrix
from pushtrack.pretrack import BIGON_TRACK, TRAIN_TRACK, build_pretrack
from pushtrack.spectral import is_primitive, min_row_sum, pf_enclosure, row_sum_bound

from conftest import analyzable

TOL = Fraction(1, 10**9)


def matrices(max_dim=8):
    return st.integers(1, max_dim).flatmap(
        lambda d: st.lists(st.lists(st.integers(0, 3), min_size=d, max_size=d), min_size=d, max_size=d)
    )


class TestPrimitivity:
    def test_genus2(self):
        assert is_primitive(families.genus2_matrix())

    def test_identity(self):
        assert not is_primitive(identity(3))

    def test_three_cycle(self):
        assert not is_primitive([[0, 1, 0], [0, 0, 1], [1, 0, 0]])

    def test_one_by_one(self):
        assert is_primitive([[7]])
        assert not is_primitive([[0]])


class TestRowSums:
    def test_genus2(self):
        m = families.genus2_matrix()
        assert row_sum_bound(m) == 11 + 8 + 2 + 5 + 0 + 5 + 4 + 4 + 0 + 1 + 0 + 1 == 41
        assert m.row_sums()[0] == 41

    def test_identity(self):
        assert row_sum_bound(identity(4)) == 1

    def test_pass_matrix(self):
        assert row_sum_bound(pass_matrix(4, 2, "left")) <= 3


class TestEnclosure:
    def test_genus2(self):
        enc = pf_enclosure(families.genus2_matrix(), tol=TOL)
        assert enc.lo**5 >= 4 and enc.hi <= 41
        assert enc.width <= TOL and enc.converged

    def test_scalar(self):
        enc = pf_enclosure([[7]])
        assert enc.lo == enc.hi == 7 and enc.iterations == 1

    def test_symmetric_two_by_two(self):
        enc = pf_enclosure([[2, 1], [1, 2]], seed=[1, 2], tol=TOL)
        assert enc.contains(3) and enc.width <= TOL

    def test_not_primitive(self):
        with pytest.raises(NotPrimitive):
            pf_enclosure(identity(2))

    def test_bad_seed(self):
        with pytest.raises(ValueError):
            pf_enclosure([[1, 1], [1, 1]], seed=[1, 0])

    def test_iteration_cap_env(self, monkeypatch):
        monkeypatch.setenv("PUSHTRACK_ITER_CAP", "2")
        enc = pf_enclosure(families.genus2_matrix(), tol=TOL)
        assert enc.iterations == 2 and not enc.converged
        assert enc.lo <= enc.hi

    def test_float_tolerance(self):
        enc = pf_enclosure([[2, 1], [1, 2]], seed=[1, 3], tol=1e-6)
        assert enc.width <= Fraction(1, 10**6)

    def test_json(self):
        j = pf_enclosure([[2, 1], [1, 2]]).to_json()
        assert j["lo"] == "3/1" and j["hi"] == "3/1"


@given(matrices())
def test_primitivity_matches_power_test(rows):
    m = np.array(rows, dtype=object)
    assert is_primitive(m) == brute_force_primitive(m)


@given(matrices(6))
def test_enclosure_invariants(rows):
    m = np.array(rows, dtype=object)
    if not is_primitive(m):
        return
    enc = pf_enclosure(m, tol=TOL)
    los = [lo for lo, _ in enc.history]
    his = [hi for _, hi in enc.history]
    assert all(a <= b for a, b in zip(los, los[1:]))
    assert all(a >= b for a, b in zip(his, his[1:]))
    assert enc.hi <= row_sum_bound(m) + TOL
    assert enc.lo >= min_row_sum(m) - TOL


@given(matrices(6), st.lists(st.integers(1, 20), min_size=6, max_size=6))
def test_seed_independence(rows, seed):
    m = np.array(rows, dtype=object)
    if not is_primitive(m):
        return
    a = pf_enclosure(m, tol=TOL)
    b = pf_enclosure(m, seed=seed[: m.shape[0]], tol=TOL)
    assert a.lo <= b.hi and b.lo <= a.hi


@given(analyzable(max_crossings=5), st.integers(1, 9))
def test_basepoint_rotation_keeps_eigenvalue(d, steps):
    # the pushes along the two based loops are conjugate
    r = rotate_basepoint(d, steps)
    tracks = (build_pretrack(d), build_pretrack(r))
    if any(t.track_class not in (TRAIN_TRACK, BIGON_TRACK) for t in tracks):
        return
    m1, m2 = incidence_matrix(d), incidence_matrix(r)
    if not (is_primitive(m1) and is_primitive(m2)):
        return
    a, b = pf_enclosure(m1, tol=TOL), pf_enclosure(m2, tol=TOL)
    assert a.lo <= b.hi + TOL and b.lo <= a.hi + TOL
