import math
from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from zoomscope.congruence import (ConstantWeight, CubicWeight, QuadPoly, central_count,
                                  interval_count, is_split, rho, rho_naive, rho_sum,
                                  root_discrepancy, roots_up_to, star_discrepancy)
from zoomscope.errors import BadWindow, EmptySequence
from zoomscope.pell import PellFamily

BATTERY = [QuadPoly(1, 1), QuadPoly(2, 3), QuadPoly(1, -1), QuadPoly(4, -9)]


def test_rho_examples():
    assert rho(QuadPoly(1, 1), 5) == 2
    assert rho(QuadPoly(1, 1), 3) == 0
    assert rho(QuadPoly(1, 1), 65) == 4
    assert rho(QuadPoly(1, -1), 8) == 4
    assert rho(QuadPoly(1, 1), 1) == 1


def test_rho_sum_small():
    assert rho_sum(QuadPoly(1, 1), 10) == 6
    assert rho_sum(QuadPoly(1, 1), 10) == sum(rho_naive(QuadPoly(1, 1), n) for n in range(1, 11))


@pytest.mark.parametrize("F_", BATTERY, ids=str)
def test_rho_fast_matches_naive(F_):
    for n in range(1, 2001):
        assert rho(F_, n) == rho_naive(F_, n), n


@pytest.mark.parametrize("F_", BATTERY, ids=str)
def test_rho_sum_matches_pointwise(F_):
    assert rho_sum(F_, 3000) == sum(rho(F_, n) for n in range(1, 3001))


def test_rho_stable_on_good_prime_powers():
    primes = [p for p in range(3, 101) if all(p % q for q in range(2, p))]
    for F_ in BATTERY:
        bad = 2 * F_.lead * F_.constant
        for p in primes:
            if bad % p == 0:
                continue
            for e in range(1, 5):
                assert rho(F_, p ** e) == rho(F_, p)


@given(st.sampled_from(BATTERY), st.integers(1, 300), st.integers(1, 300))
def test_rho_multiplicative(F_, m, n):
    assume(math.gcd(m, n) == 1)
    assert rho(F_, m * n) == rho(F_, m) * rho(F_, n)


def test_roots_up_to_examples():
    assert roots_up_to(QuadPoly(1, 1), 5) == [(0, 1), (1, 2), (2, 5), (3, 5)]
    assert roots_up_to(QuadPoly(1, 1), 3) == [(0, 1), (1, 2)]
    assert roots_up_to(QuadPoly(1, -1), 4) == [(0, 1), (1, 2), (1, 3), (2, 3), (1, 4), (3, 4)]


@given(st.sampled_from(BATTERY), st.integers(1, 200))
def test_roots_are_roots_and_count_matches(F_, X):
    seq = roots_up_to(F_, X)
    assert len(seq) == rho_sum(F_, X)
    assert seq == sorted(seq, key=lambda e: (e[1], e[0]))
    for v, k in seq:
        assert 0 <= v < k and F_(v) % k == 0


def test_star_discrepancy_examples():
    assert star_discrepancy([F(1, 2)]) == F(1, 2)
    assert star_discrepancy([F(1, 4), F(3, 4)]) == F(1, 4)
    N = 37
    assert star_discrepancy([F(2 * i - 1, 2 * N) for i in range(1, N + 1)]) == F(1, 2 * N)
    with pytest.raises(EmptySequence):
        star_discrepancy([])


@given(st.lists(st.fractions(min_value=0, max_value=F(999, 1000), max_denominator=1000), min_size=1, max_size=40))
def test_star_discrepancy_matches_definition(xs):
    # sup over t of |#{x < t}/N - t|, attained at sample points or just past them
    N = len(xs)
    best = F(0)
    for t in set(xs) | {F(1)}:
        below = sum(1 for x in xs if x < t)
        upto = sum(1 for x in xs if x <= t)
        best = max(best, abs(F(below, N) - t), abs(F(upto, N) - t))
    assert star_discrepancy(xs) == best


def test_root_discrepancy_agrees_with_generic_routine():
    seq = roots_up_to(QuadPoly(1, 1), 500)
    assert root_discrepancy(QuadPoly(1, 1), 500) == star_discrepancy([F(v, k) for v, k in seq])


def test_interval_count_examples():
    P = QuadPoly(1, 1)
    assert interval_count(P, 5, (0, 1)) == rho_sum(P, 5) == 4
    # 1/2, 2/5 and 3/5 fall in [3/10, 7/10)
    assert interval_count(P, 5, (F(3, 10), F(7, 10))) == 3


@given(st.sampled_from(BATTERY), st.integers(1, 150),
       st.fractions(0, 1, max_denominator=20), st.fractions(0, 1, max_denominator=20))
def test_interval_count_matches_oracle(F_, X, a, b):
    lo, hi = min(a, b), max(a, b)
    expect = sum(1 for v, k in roots_up_to(F_, X) if lo <= F(v, k) < hi)
    assert interval_count(F_, X, (lo, hi)) == expect


def _central_oracle(F_, G, A, t2, t1, X):
    A, t1, t2 = F(A), F(t1), F(t2)
    count = 0
    m = 1
    while m * m * G.lower_bound(t2, t1) <= X:
        for l in range(0, math.ceil(A * m) + 1):
            x = A - F(l, m)
            if F_(l) % m == 0 and t2 <= x <= t1 and m * m * G(x) <= X:
                count += 1
        m += 1
    return count


def test_central_count_examples():
    P = QuadPoly(1, 1)
    assert central_count(P, ConstantWeight(), 1, 0, 1, 25) == _central_oracle(P, ConstantWeight(), 1, 0, 1, 25)
    assert central_count(P, ConstantWeight(), 1, 0, 1, 0) == 0
    with pytest.raises(BadWindow):
        central_count(P, ConstantWeight(), F(1, 2), 0, 1, 10)
    with pytest.raises(BadWindow):
        central_count(P, ConstantWeight(), 2, 1, 1, 10)


@given(st.sampled_from(BATTERY), st.integers(0, 3000),
       st.fractions(F(1, 10), F(1, 2), max_denominator=10), st.fractions(F(6, 10), 1, max_denominator=10))
def test_central_count_cubic_matches_oracle(F_, X, t2, t1):
    G = CubicWeight(F(3, 2), 4)
    A = t1 + F(1, 3)
    assert central_count(F_, G, A, t2, t1, X) == _central_oracle(F_, G, A, t2, t1, X)


def test_is_split():
    assert is_split(PellFamily(1, -1))
    assert not is_split(PellFamily(1, 1))
    assert is_split(PellFamily(4, -9))
    assert not is_split(PellFamily(2, -9))
    assert not is_split(PellFamily(4, -3))


def test_average_order_stabilizes():
    P = QuadPoly(1, 1)
    a, b = rho_sum(P, 10 ** 5) / 10 ** 5, rho_sum(P, 10 ** 6) / 10 ** 6
    assert abs(a / b - 1) < 0.02
