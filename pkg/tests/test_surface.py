from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from zoomscope.errors import BlownUpPoint, OffChart, Overflow
from zoomscope.surface import (ORIGIN, Q, ChartPoint, ProjPointPair, Region, chart,
                               chart_inv, distance, format_point, height, is_thin,
                               parse_chart, parse_point, region_of, swap_chart,
                               swap_symmetry)


def P(x, y, s, t):
    return ProjPointPair.of(x, y, s, t)


@pytest.mark.parametrize("pt, h", [
    (P(1, 1, 1, 1), 1),
    (P(3, 2, 1, 4), 48),
    (P(20, 21, 15, 14), 2250),
])
def test_height_examples(pt, h):
    assert height(pt, check=True) == h


def test_height_rejects_blown_up_points():
    for pt in (P(1, 0, 1, 0), P(0, 1, 1, 0), P(1, 0, 0, 1)):
        with pytest.raises(BlownUpPoint):
            height(pt)


def test_height_width_guard():
    with pytest.raises(Overflow):
        height(P(2 ** 31 + 1, 1, 1, 1))


def test_canonical_form_enforced():
    with pytest.raises(ValueError):
        ProjPointPair(2, 2, 1, 1)
    assert P(-4, -6, 3, -1) == ProjPointPair(2, 3, -3, 1)


def test_chart_examples():
    assert chart(Q) == ORIGIN
    assert chart(P(4, 3, 3, 2)) == ChartPoint(F(1, 3), F(1, 2))
    assert chart_inv(ChartPoint(F(-1, 21), F(1, 14))) == P(20, 21, 15, 14)
    with pytest.raises(OffChart):
        chart(P(1, 0, 1, 1))


def test_distance_examples():
    assert distance(ORIGIN) == 0
    assert distance(ChartPoint(F(1, 3), F(1, 2))) == F(1, 2)
    assert distance(ChartPoint(F(-1, 21), F(1, 14))) == F(1, 14)


@pytest.mark.parametrize("c, reg", [
    ((F(1, 3), F(1, 2)), Region.S1),
    ((F(-1, 21), F(1, 14)), Region.S2),
    ((F(-5, 21), F(-5, 14)), Region.S4),
    ((F(1, 2), F(1, 3)), Region.S1_SWAP),
    ((0, 0), Region.AT_Q),
    ((0, F(1, 5)), Region.LINE1),
    ((F(1, 5), 0), Region.LINE2),
    ((F(-1, 11), F(1, 10)), Region.LINE3),
    ((F(1, 7), F(1, 7)), Region.DIAGONAL),
])
def test_region_examples(c, reg):
    assert region_of(ChartPoint(*c)) is reg


def test_thin_examples():
    assert is_thin(ChartPoint(F(-5, 21), F(-5, 14)))
    assert not is_thin(ORIGIN)
    assert not is_thin(ChartPoint(F(1, 3), F(1, 2)))
    # thin points off S3 and S4: the diagonal and line 1
    assert is_thin(ChartPoint(F(-2, 5), F(-2, 5)))
    assert is_thin(ChartPoint(0, F(-1, 4)))


def test_swap_examples():
    assert swap_symmetry(Q) == Q
    assert swap_symmetry(P(4, 3, 3, 2)) == P(3, 2, 4, 3)
    assert height(P(3, 2, 4, 3)) == height(P(4, 3, 3, 2)) == 18


def test_text_round_trip():
    pt = P(20, 21, 15, 14)
    assert format_point(pt) == "20:21,15:14"
    assert parse_point("20:21 × 15:14") == pt
    assert parse_chart("-1/21,1/14") == chart(pt)


coords = st.integers(1, 10 ** 4)
signed = st.integers(-10 ** 4, 10 ** 4)


@st.composite
def points(draw):
    x, y, s, t = draw(signed), draw(coords), draw(signed), draw(coords)
    assume(x != 0 or y != 0)
    assume(s != 0 or t != 0)
    return P(x, y, s, t)


@given(points())
def test_height_gcd_identity_and_positivity(pt):
    assert height(pt, check=True) >= 1


@given(points())
def test_chart_round_trip(pt):
    assert chart_inv(chart(pt)) == pt


@given(points())
def test_swap_preserves_height_and_mirrors_region(pt):
    assert height(swap_symmetry(pt)) == height(pt)
    r1, r2 = region_of(chart(pt)), region_of(chart(swap_symmetry(pt)))
    mirror = {Region.LINE1: Region.LINE2, Region.LINE2: Region.LINE1}
    if r1 in mirror:
        assert r2 is mirror[r1]
    elif distance(chart(pt)) < 1:
        # inside the unit ball the S regions and their mirrors are disjoint
        if r1.base is not r1:
            assert r2 is r1.base
        elif r1 in (Region.S1, Region.S2, Region.S3, Region.S4):
            assert r2.base is r1 and r2 is not r1
        else:
            assert r2 is r1
    assert swap_chart(chart(pt)) == chart(swap_symmetry(pt))


@given(points())
def test_thin_points_lie_below_line3(pt):
    c = chart(pt)
    if is_thin(c):
        assert c.w * c.z + c.w + c.z < 0
        assert region_of(c) is not Region.LINE3
        if distance(c) < 1:
            assert region_of(c).base in (Region.S3, Region.S4, Region.DIAGONAL,
                                         Region.LINE1, Region.LINE2)
