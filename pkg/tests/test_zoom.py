from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zoomscope.congruence import is_split
from zoomscope.errors import (DegenerateSeries, UnsupportedZoomFactor, WindowTooLarge,
                              WrongRegion)
from zoomscope.pell import PellFamily
from zoomscope.surface import (Q, ChartPoint, ProjPointPair, Region, chart, distance, height,
                               region_of)
from zoomscope.zoom import (Ball, Trapezoid, Window, ZoomQuery, brute_enumerate,
                            count_line_points, fit_exponent, line_records, make_record,
                            offline_brute, offline_param, offline_scan, param_enumerate,
                            profile_threshold_sq, survey, thin_split, threshold_stat)

R = F(5, 2)
S_REGIONS = {Region.S1, Region.S2, Region.S3, Region.S4}


def _points(recs):
    return {r.point for r in recs}


@pytest.mark.parametrize("B", [30, 200, 1000])
@pytest.mark.parametrize("eps", [F(1, 2), F(1), F(2)])
def test_brute_matches_naive_scan(B, eps):
    win = Window(B, R, eps)
    try:
        win.check_chart_radius()
    except WindowTooLarge:
        pytest.skip("window wider than the chart")
    assert set(offline_brute(win)) == set(offline_scan(win))


@pytest.mark.parametrize("B", [10 ** 3, 10 ** 4, 10 ** 5])
def test_param_matches_brute(B):
    for eps in (F(1, 2), F(2)):
        win = Window(B, R, eps)
        assert {P for P, _, _ in offline_param(win)} == set(offline_brute(win))


def test_param_heights_are_true_heights():
    for P, H, _ in offline_param(Window(10 ** 6, R, F(2))):
        assert H == height(P)


def test_lines_from_scan_at_tiny_B():
    # the scan skips lines; check line_records against a direct search instead
    B, eps = 400, F(2)
    win = Window(B, R, eps)
    found = set()
    for y in range(1, 21):
        for x in range(1, 21):
            for t in range(1, 21):
                for s in range(1, 21):
                    try:
                        P = ProjPointPair.of(x, y, s, t)
                    except Exception:
                        continue
                    c = chart(P)
                    if region_of(c) not in (Region.LINE1, Region.LINE2, Region.LINE3):
                        continue
                    if height(P) <= B and win.contains_distance(distance(c)):
                        found.add(P)
    assert _points(line_records(win)) == found
    counts = count_line_points(B, R, eps)
    assert sum(counts.values()) == len(found)


@pytest.mark.parametrize("B", [10 ** 4, 10 ** 6, 10 ** 8])
def test_line_counts_match_records(B):
    for eps in (F(1, 2), F(2)):
        recs = line_records(Window(B, R, eps))
        counts = count_line_points(B, R, eps)
        for i, reg in enumerate((Region.LINE1, Region.LINE2, Region.LINE3), 1):
            assert counts[i] == sum(1 for r in recs if r.region is reg)


def test_only_Q_at_height_one():
    assert brute_enumerate(ZoomQuery(1, R, F(1, 2))) == []
    recs = brute_enumerate(ZoomQuery(1, R, F(1, 2), exclude_Q=False))
    assert [r.point for r in recs] == [Q]


def test_appearance_of_first_nodal_point():
    P = ProjPointPair(4, 3, 3, 2)
    assert chart(P) == ChartPoint(F(1, 3), F(1, 2))
    for B in (10, 17, 18, 19, 32, 33, 100, 1000):
        for eps in (F(1, 2), F(1), F(2), F(3)):
            win = Window(B, R, eps)
            try:
                win.check_chart_radius()
            except WindowTooLarge:
                continue
            expect = B >= 18 and B ** 2 * F(1, 2) ** 5 <= eps ** 5
            assert (P in _points(param_enumerate(ZoomQuery(B, R, eps)))) == expect


def test_window_too_large():
    with pytest.raises(WindowTooLarge):
        brute_enumerate(ZoomQuery(1, R, F(1)))


def test_param_refuses_other_factors():
    with pytest.raises(UnsupportedZoomFactor):
        param_enumerate(ZoomQuery(10 ** 4, F(2), F(1, 2)))


def test_thin_flag_matches_split_family():
    recs = param_enumerate(ZoomQuery(10 ** 7, R, F(2)))
    for rec in recs:
        if rec.region.base in (Region.S3, Region.S4):
            p = rec.profile
            assert rec.thin == is_split(PellFamily(p.C3, p.D))
        if rec.region.base is Region.S1:
            assert not rec.thin


def test_thin_bucket_nonempty_and_holds_the_split_family():
    recs, rep = survey(ZoomQuery(10 ** 8, R, F(2)))
    assert rep.thin > 0
    thin = [r for r in recs if r.thin]
    assert any((r.profile.C3, r.profile.D) == (1, -1) for r in thin if r.profile)
    assert all(r.region.base in (Region.S3, Region.S4) for r in thin)


def test_survey_counts_match_records():
    q = ZoomQuery(10 ** 6, R, F(2))
    recs, rep = survey(q)
    full = brute_enumerate(q)
    assert thin_split(full, q.B, q.r, q.epsilon) == rep
    assert _points(recs) == {r.point for r in full if r.region in S_REGIONS or r.region.base in S_REGIONS}
    assert rep.total == rep.on_lines + rep.thin + rep.generic


def test_region_filter_and_exclusions():
    q = ZoomQuery(10 ** 5, R, F(2))
    full = brute_enumerate(q)
    only_s1 = brute_enumerate(ZoomQuery(10 ** 5, R, F(2), region_filter={Region.S1}))
    assert only_s1 == [r for r in full if r.region is Region.S1]
    no_lines = brute_enumerate(ZoomQuery(10 ** 5, R, F(2), exclude_lines=True))
    assert all(r.region not in (Region.LINE1, Region.LINE2, Region.LINE3) for r in no_lines)
    no_thin = brute_enumerate(ZoomQuery(10 ** 5, R, F(2), exclude_thin=True))
    assert not any(r.thin for r in no_thin)


def test_liouville_at_r2():
    for rec in brute_enumerate(ZoomQuery(10 ** 6, F(2), F(1, 2))):
        assert rec.height * distance(rec.chart) ** 2 >= 1


def test_deterministic_across_workers():
    q = ZoomQuery(10 ** 6, R, F(2))
    assert param_enumerate(q, workers=1) == param_enumerate(q, workers=2)
    assert brute_enumerate(q, workers=1) == brute_enumerate(q, workers=2)


def test_threshold_example():
    win = Window(18, R, F(2))
    rec = make_record(ProjPointPair(4, 3, 3, 2), win)
    assert threshold_stat(rec, 18) == F(15, 2)
    assert profile_threshold_sq(rec.profile) == 1
    off = make_record(ProjPointPair(20, 21, 15, 14), win)
    with pytest.raises(WrongRegion):
        threshold_stat(off, 18)


def test_threshold_invariant_on_S1():
    for B in (10 ** 5, 10 ** 7):
        for rec in param_enumerate(ZoomQuery(B, R, F(2), region_filter={Region.S1})):
            stat = threshold_stat(rec, B)
            assert stat > profile_threshold_sq(rec.profile)
            assert stat > 1


def test_zoom_measure():
    q = ZoomQuery(10 ** 6, R, F(2))
    recs = brute_enumerate(q)
    assert Ball(F(2)).contains(recs[0])
    assert sum(Ball(F(2)).contains(r) for r in recs) == len(recs)
    assert not any(Trapezoid(F(1), F(1, 2), F(0), F(10)).contains(r) for r in recs)
    # a trapezoid above the w axis only sees S1-type points with theta2 w < z < theta1 w
    trap = Trapezoid(F(0), F(2), F(1), F(100))
    for r in recs:
        if trap.contains(r):
            assert r.chart.z > r.chart.w > 0


def test_fit_exponent():
    series = [(10 ** k, 10 ** (k / 5)) for k in range(4, 12)]
    slope, err = fit_exponent(series)
    assert slope == pytest.approx(0.2, abs=1e-12)
    assert err == pytest.approx(0, abs=1e-9)
    with pytest.raises(DegenerateSeries):
        fit_exponent([(10, 1), (100, 2)])
    with pytest.raises(DegenerateSeries):
        fit_exponent([(10, 1), (100, 0), (1000, 3)])


@given(st.integers(1, 10 ** 6), st.fractions(F(1, 10), 3, max_denominator=20),
       st.fractions(F(1, 10 ** 4), 1, max_denominator=10 ** 4))
def test_window_comparisons_are_exact(B, eps, d):
    win = Window(B, R, eps)
    # B^(2/5) d <= eps  <=>  B^2 d^5 <= eps^5
    assert win.contains_distance(d) == (B ** 2 * d ** 5 <= eps ** 5)
    assert win.cmp_scaled(d, eps) <= 0 if win.contains_distance(d) else win.cmp_scaled(d, eps) > 0
