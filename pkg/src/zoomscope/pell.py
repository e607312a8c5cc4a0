"""Nodal-curve parameters (a, b, u, v) and the Pell-Fermat families.

A point off the three lines and off the diagonal lies on exactly one nodal
curve a x y (s-t)^2 = b s t (x-y)^2; (u, v) locates it on that curve.  The
family (C3, D) groups parameters with (a u^2 - b v^2)/(b - a) = D/C3.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DegenerateParams, NotInRegion, OutOfDomain, WrongRegion
from .surface import ChartPoint, ProjPointPair, Region, distance, height, region_of


@dataclass(frozen=True)
class UVParams:
    a: int
    b: int
    u: int
    v: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1 or gcd(self.a, self.b) != 1:
            raise ValueError("a, b must be coprime positive integers")
        if gcd(self.u, self.v) != 1:
            raise ValueError("u, v must be coprime")
        if self.u < 0 or (self.u == 0 and self.v < 0):
            raise ValueError("sign convention is u > 0 (or u = 0, v = 1)")

    @classmethod
    def of(cls, a, b, u, v) -> "UVParams":
        if u < 0 or (u == 0 and v < 0):
            u, v = -u, -v
        return cls(a, b, u, v)


@dataclass(frozen=True)
class PellFamily:
    C3: int
    D: int

    def __post_init__(self):
        if self.C3 < 1 or self.D == 0 or gcd(self.C3, self.D) != 1:
            raise ValueError("need C3 >= 1, D != 0 and gcd(C3, D) = 1")


@dataclass(frozen=True)
class GcdProfile:
    d1: int
    d2: int
    d3: int
    D1: int
    D2: int
    c3: int
    C3: int
    D: int
    W: int


def _check(p: UVParams):
    if p.u == p.v:
        raise DegenerateParams("u = v")
    if p.b * p.v == p.a * p.u:
        raise DegenerateParams("b v = a u")


def psi(p: UVParams) -> ProjPointPair:
    """The point with nodal parameters (a, b) and position (u, v)."""
    _check(p)
    a, b, u, v = p.a, p.b, p.u, p.v
    d1, d2 = gcd(u, b), gcd(v, a)
    d3 = gcd(u - v, b - a)
    D1, D2 = gcd(u * u, b), gcd(v * v, a)
    m = b * v - a * u
    q1 = D1 * d2 * d3
    q2 = d1 * D2 * d3
    return ProjPointPair.of(b * v * (u - v) // q1, u * m // q1,
                            a * u * (u - v) // q2, v * m // q2)


def psi_chart(p: UVParams) -> ChartPoint:
    _check(p)
    if p.u * p.v == 0:
        raise DegenerateParams("u v = 0 maps outside the chart")
    a, b, u, v = p.a, p.b, p.u, p.v
    num = a * u * u - b * v * v
    m = b * v - a * u
    return ChartPoint(Fraction(num, u * m), Fraction(num, v * m))


def uv_from_chart(c: ChartPoint, allow_swapped: bool = False) -> UVParams:
    """Inverse of psi on S1..S4 inside the unit ball.

    With allow_swapped=True the mirror images of S1..S4 are accepted too;
    their parameters then have a > b.
    """
    reg = region_of(c)
    ok = reg in (Region.S1, Region.S2, Region.S3, Region.S4)
    if allow_swapped:
        ok = ok or reg.base is not reg
    if not ok or distance(c) >= 1:
        raise NotInRegion(f"{c} lies in {reg.value} or outside the unit ball")
    w, z = c.w, c.z
    ratio = z / w
    ba = z * z * (1 + w) / (w * w * (1 + z))
    return UVParams.of(ba.denominator, ba.numerator, ratio.numerator, ratio.denominator)


def t_region(p: UVParams):
    """Index i with p in T_i, or None.

    T3 is taken as {u > 0 > v, -u/v < sqrt(b/a)}: the additional u > -v of
    the usual statement would miss the part of S3 where |z| < w.
    """
    a, b, u, v = p.a, p.b, p.u, p.v
    if not (b > a > 0) or v == 0:
        return None
    ba = Fraction(b, a)
    r = Fraction(u, v)
    if v > 0:
        if u > v and ba < r * r and r < ba:
            return 1
        if u > v and r * r < ba:
            return 4
        return None
    r = -r
    if u > -v and r * r > ba:
        return 2
    if r * r < ba:
        return 3
    return None


def gcd_profile(p: UVParams) -> GcdProfile:
    a, b, u, v = p.a, p.b, p.u, p.v
    if a == b:
        raise DegenerateParams("a = b")
    if u == v:
        raise DegenerateParams("u = v")
    d1, d2 = gcd(u, b), gcd(v, a)
    d3 = gcd(u - v, b - a)
    D1, D2 = gcd(u * u, b), gcd(v * v, a)
    ratio = Fraction(a * u * u - b * v * v, b - a)
    C3, D = ratio.denominator, ratio.numerator
    c3 = abs(b - a) // d3
    assert D % (D1 * D2) == 0, "D1 D2 must divide D"
    assert c3 % C3 == 0, "C3 must divide c3"
    return GcdProfile(d1, d2, d3, D1, D2, c3, C3, D, c3 // C3)


def ab_from_uv(fam: PellFamily, u: int, v: int):
    """(a, b, k) with a = (C3 v^2 + D)/k, b = (C3 u^2 + D)/k."""
    if gcd(u, v) != 1:
        raise OutOfDomain("u, v must be coprime")
    fu = fam.C3 * u * u + fam.D
    fv = fam.C3 * v * v + fam.D
    if fu <= 0 or fv <= 0:
        raise OutOfDomain("C3 u^2 + D and C3 v^2 + D must be positive")
    k = gcd(fu, fv)
    return fv // k, fu // k, k


def key_translation(q, fam: PellFamily, u: int, v: int):
    """Both sides of: (u+v) | q k(u,v)  <=>  c3/C3 | q.

    q may also be an iterable of moduli; then a list of pairs comes back.
    """
    a, b, k = ab_from_uv(fam, u, v)
    n = u + v
    W = gcd_profile(UVParams.of(a, b, u, v)).W

    def sides(q):
        return n != 0 and (q * k) % n == 0, q % W == 0

    if isinstance(q, int):
        return sides(q)
    return [sides(x) for x in q]


def g(n: int) -> int:
    """prod p^ceil(v_p(n)/2): the least m with n | m^2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out *= p ** ((e + 1) // 2)
        p += 1
    if n > 1:
        out *= n
    return out


def parametric_height(p: UVParams) -> int:
    """Closed-form height on S1: a^2 b u^2 (u-v)^3 / (D1^2 D2^2 d3^3)."""
    try:
        reg = region_of(psi_chart(p))
    except DegenerateParams:
        raise WrongRegion("degenerate parameters")
    if reg is not Region.S1:
        raise WrongRegion(f"parameters land in {reg.value}, not S1")
    prof = gcd_profile(p)
    num = p.a ** 2 * p.b * p.u ** 2 * (p.u - p.v) ** 3
    den = (prof.D1 * prof.D2) ** 2 * prof.d3 ** 3
    return num // den


def family_chart(C3: int, D: int, u: int, v: int) -> ChartPoint:
    """Chart point of the family member at (u, v); independent of k."""
    m = C3 * u * v - D
    n = D * (u + v)
    return ChartPoint(Fraction(n, u * m), Fraction(n, v * m))


def family_params(C3: int, D: int, u: int, v: int) -> UVParams:
    a, b, _ = ab_from_uv(PellFamily(C3, D), u, v)
    return UVParams.of(a, b, u, v)


def section_height(p: UVParams) -> int:
    return height(psi(p))
