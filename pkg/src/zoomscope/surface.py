"""Geometry of Y3 seen through P1 x P1 coordinates.

Points are pairs [x:y] x [s:t].  Near Q = [1:1] x [1:1] we use the affine
chart w = x/y - 1, z = s/t - 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, isqrt

from .errors import BlownUpPoint, OffChart, Overflow

COORD_LIMIT = 1 << 30
SECTION_LIMIT = 1 << 127

BLOWN_UP = ((1, 0, 1, 0), (0, 1, 1, 0), (1, 0, 0, 1))


def _normalize_pair(a, b):
    g = gcd(a, b)
    if g == 0:
        raise ValueError("(0, 0) is not a projective point")
    a, b = a // g, b // g
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
    return a, b


@dataclass(frozen=True)
class ProjPointPair:
    """A point [x:y] x [s:t] stored in canonical primitive form."""

    x: int
    y: int
    s: int
    t: int

    def __post_init__(self):
        if (self.x, self.y) != _normalize_pair(self.x, self.y) or \
           (self.s, self.t) != _normalize_pair(self.s, self.t):
            raise ValueError("coordinates are not in canonical primitive form; use ProjPointPair.of")

    @classmethod
    def of(cls, x, y, s, t) -> "ProjPointPair":
        x, y = _normalize_pair(int(x), int(y))
        s, t = _normalize_pair(int(s), int(t))
        return cls(x, y, s, t)

    def __str__(self):
        return format_point(self)


@dataclass(frozen=True)
class ChartPoint:
    w: Fraction
    z: Fraction

    def __post_init__(self):
        object.__setattr__(self, "w", Fraction(self.w))
        object.__setattr__(self, "z", Fraction(self.z))

    def __str__(self):
        return format_chart(self)


Q = ProjPointPair(1, 1, 1, 1)
ORIGIN = ChartPoint(Fraction(0), Fraction(0))


class Region(Enum):
    S1 = "S1"
    S2 = "S2"
    S3 = "S3"
    S4 = "S4"
    # images of S1..S4 under the swap (w, z) -> (z, w)
    S1_SWAP = "S1'"
    S2_SWAP = "S2'"
    S3_SWAP = "S3'"
    S4_SWAP = "S4'"
    LINE1 = "L1"
    LINE2 = "L2"
    LINE3 = "L3"
    DIAGONAL = "diag"
    AT_Q = "Q"

    @property
    def on_line(self):
        return self in (Region.LINE1, Region.LINE2, Region.LINE3)

    @property
    def base(self):
        """The S-region this tag is a swap image of (or itself)."""
        return _SWAP_BASE.get(self, self)


_SWAP_BASE = {Region.S1_SWAP: Region.S1, Region.S2_SWAP: Region.S2,
              Region.S3_SWAP: Region.S3, Region.S4_SWAP: Region.S4}
_SWAP_OF = {v: k for k, v in _SWAP_BASE.items()}


def _check_width(*vals):
    for v in vals:
        if abs(v) > COORD_LIMIT:
            raise Overflow(f"coordinate {v} exceeds 2^30")


def sections(P: ProjPointPair):
    """The six anticanonical sections evaluated at P."""
    x, y, s, t = P.x, P.y, P.s, P.t
    return (x * x * s * t, y * y * s * t, t * t * x * y, s * s * x * y, x * y * s * t, y * y * t * t)


def height(P: ProjPointPair, check: bool = False) -> int:
    """Anticanonical height of P.

    With check=True the gcd correction is compared against the gcd of the
    six section values.
    """
    key = (P.x, P.y, P.s, P.t)
    if key in BLOWN_UP:
        raise BlownUpPoint(f"{format_point(P)} is a blown-up point")
    _check_width(*key)
    secs = sections(P)
    top = max(abs(v) for v in secs)
    if top >= SECTION_LIMIT:
        raise Overflow("section value exceeds 128 bits")
    div = gcd(P.x, P.t) * gcd(P.y, P.s) * gcd(P.y, P.t)
    if check:
        g = 0
        for v in secs:
            g = gcd(g, v)
        if g != div:
            raise AssertionError(f"gcd identity fails at {format_point(P)}: {g} != {div}")
    return top // div


def chart(P: ProjPointPair) -> ChartPoint:
    if P.y == 0 or P.t == 0:
        raise OffChart(f"{format_point(P)} is outside the chart y t != 0")
    return ChartPoint(Fraction(P.x, P.y) - 1, Fraction(P.s, P.t) - 1)


def chart_inv(c: ChartPoint) -> ProjPointPair:
    a = c.w + 1
    b = c.z + 1
    return ProjPointPair.of(a.numerator, a.denominator, b.numerator, b.denominator)


def distance(c: ChartPoint) -> Fraction:
    return max(abs(c.w), abs(c.z))


def line3_value(c: ChartPoint) -> Fraction:
    return c.w * c.z + c.w + c.z


def region_of(c: ChartPoint) -> Region:
    w, z = c.w, c.z
    if w == 0 and z == 0:
        return Region.AT_Q
    if w == 0:
        return Region.LINE1
    if z == 0:
        return Region.LINE2
    q = line3_value(c)
    if q == 0:
        return Region.LINE3
    if z == w:
        return Region.DIAGONAL
    base = _base_region(w, z, q)
    if base is not None:
        return base
    return _SWAP_OF[_base_region(z, w, q)]


def _base_region(w, z, q):
    if q > 0:
        if w > 0 and z > w:
            return Region.S1
        if w < 0:
            return Region.S2
    else:
        if w > 0:
            return Region.S3
        if w < 0 and z < w:
            return Region.S4
    return None


def is_square_rational(q: Fraction) -> bool:
    if q <= 0:
        return False
    n, d = q.numerator, q.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def is_thin(c: ChartPoint) -> bool:
    """True when -(wz + w + z) is the square of a nonzero rational."""
    return is_square_rational(-line3_value(c))


def swap_symmetry(P: ProjPointPair) -> ProjPointPair:
    return ProjPointPair(P.s, P.t, P.x, P.y)


def swap_chart(c: ChartPoint) -> ChartPoint:
    return ChartPoint(c.z, c.w)


# text forms used by the CLI and the CSV writers

def format_point(P: ProjPointPair) -> str:
    return f"{P.x}:{P.y},{P.s}:{P.t}"


def parse_point(text: str) -> ProjPointPair:
    left, right = text.replace(" ", "").replace("×", ",").replace("x", ",").split(",")
    x, y = left.split(":")
    s, t = right.split(":")
    return ProjPointPair.of(int(x), int(y), int(s), int(t))


def format_chart(c: ChartPoint) -> str:
    return f"{c.w},{c.z}"


def parse_chart(text: str) -> ChartPoint:
    a, b = text.replace(" ", "").split(",")
    return ChartPoint(Fraction(a), Fraction(b))
