import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_fuchsian, random_ratfun
from mahlersys.companion import (
    cyclic_gauge,
    hull_points,
    is_companion_identity,
    lower_hull,
    pick_z0,
    ramification_from_slopes,
    ramification_index,
)
from mahlersys.corpus import all_examples, example_order2, rudin_shapiro
from mahlersys.exact import RatFun
from mahlersys.linalg import MatQ
from mahlersys.system import MahlerSystem, RatMatrix

z = RatFun.z()


def test_pick_z0_examples():
    assert pick_z0(MahlerSystem(2, RatMatrix([[2]]))) == 2
    # det = z^2 - 3z + 1 with constant denominators
    A = RatMatrix([[z, 1], [3 * z - 1, z]])
    assert A.det() == z**2 - 3 * z + 1
    assert pick_z0(MahlerSystem(2, A)) == 4
    rs = rudin_shapiro().sys
    assert pick_z0(rs) == 2
    assert rs.A(2).rank() == 2 and rs.A(4).rank() == 2


def test_order_one_is_its_own_companion():
    a = (1 + z) / (3 - z**2)
    form = cyclic_gauge(MahlerSystem(3, RatMatrix([[a]])))
    assert form.P == RatMatrix([[1]]) and form.q == (a,)


@pytest.mark.parametrize("named", all_examples(), ids=lambda n: n.name)
def test_companion_identity_on_corpus(named):
    form = cyclic_gauge(named.sys)
    assert is_companion_identity(named.sys, form)


@pytest.mark.parametrize("seed", range(6))
def test_companion_identity_on_random_systems(seed):
    rng = random.Random(seed)
    m = 2 + seed % 2
    entries = [[random_ratfun(rng, max_deg=2, height=3) for _ in range(m)] for _ in range(m)]
    A = RatMatrix(entries)
    if A.det().is_zero():
        A = random_fuchsian(rng, m)
    s = MahlerSystem(2 + seed % 2, A)
    form = cyclic_gauge(s)
    lhs = form.P.phi(s.p) @ s.A @ form.P.inverse()
    assert lhs == form.companion()
    assert form.P(form.z0) == MatQ.identity(m)


def test_order2_hull_and_ramification():
    s = example_order2().sys
    form = cyclic_gauge(s)
    pts = hull_points(form.q, s.p)
    assert sorted(pts) == [(1, 3), (3, -3), (9, 0)]
    h = ramification_index(s, form)
    assert h.d == 2 and h.slopes == (-3, Fraction(1, 2))


def test_lower_hull_examples():
    h = lower_hull([(1, 3), (3, -3), (9, 0)])
    assert h.slopes == (-3, Fraction(1, 2))
    assert lower_hull([(4, 0)]).slopes == ()
    h = lower_hull([(1, 0), (2, 1), (4, 3)])
    assert h.vertices == ((1, 0), (4, 3)) and h.slopes == (1,)


def _brute_force_hull(points):
    """Vertices of the lower hull: points not on or above any chord between other points."""
    best = {}
    for x, y in points:
        best[x] = min(y, best.get(x, y))
    pts = sorted(best.items())
    keep = []
    for k, (x, y) in enumerate(pts):
        below = False
        for (x1, y1), (x2, y2) in combinations(pts, 2):
            if x1 < x < x2:
                yc = y1 + Fraction(y2 - y1, x2 - x1) * (x - x1)
                if y >= yc:
                    below = True
        if not below:
            keep.append((x, y))
    return tuple(keep)


@given(st.lists(st.tuples(st.integers(0, 30), st.integers(-10, 10)), min_size=1, max_size=8))
def test_lower_hull_properties(points):
    h = lower_hull(points)
    assert h.vertices == _brute_force_hull(points)
    assert all(a < b for a, b in zip(h.slopes, h.slopes[1:]))
    for x, y in points:
        for (x1, y1), (x2, y2) in zip(h.vertices, h.vertices[1:]):
            if x1 <= x <= x2:
                assert (y - y1) * (x2 - x1) >= (y2 - y1) * (x - x1)


def test_ramification_simple_cases():
    assert ramification_index(MahlerSystem(2, RatMatrix([[2]]))).d == 1
    h = ramification_index(MahlerSystem(2, RatMatrix([[1 / z]])))
    assert h.vertices == ((1, -1), (2, 0)) and h.d == 1
    assert ramification_from_slopes([Fraction(1, 4), Fraction(1, 3)], 2) == 3
    assert ramification_from_slopes([], 3) == 1


def test_zero_q_entries_give_no_point():
    q = (RatFun.const(0), z**2)
    assert hull_points(q, 2) == [(2, 2), (4, 0)]


@given(st.integers(-9, 9).filter(bool))
def test_d_invariant_under_scaling_q(c):
    s = example_order2().sys
    form = cyclic_gauge(s)
    scaled = [c * qi for qi in form.q]
    h1 = lower_hull(hull_points(form.q, s.p))
    h2 = lower_hull(hull_points(scaled, s.p))
    assert ramification_from_slopes(h1.slopes, s.p) == ramification_from_slopes(h2.slopes, s.p)


@pytest.mark.parametrize("named", all_examples(), ids=lambda n: n.name)
def test_ramification_in_admissible_set(named):
    s = named.sys
    d = ramification_index(s).d
    assert 1 <= d <= s.p ** s.m - 1 and d % s.p != 0
