"""Curves through Q: the three lines, the nodal and cuspidal families.

Also holds the approximation-constant formula min d/(m r) over the
branches at Q and an empirical estimator for it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .errors import PoleParameter, TooFewPoints
from .surface import ChartPoint, ProjPointPair, line3_value

INFINITY = math.inf


class FieldClass(Enum):
    RATIONAL = 1
    REAL_QUADRATIC = 2
    COMPLEX = 0


@dataclass(frozen=True)
class BranchData:
    multiplicity: int
    field_class: FieldClass

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("branch multiplicity must be >= 1")


@dataclass(frozen=True)
class CurveDescriptor:
    degree: int
    branches: tuple

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        if self.degree < 1 or not self.branches:
            raise ValueError("need degree >= 1 and at least one branch")


def _check_ab(a, b):
    if a < 1 or b < 1 or gcd(a, b) != 1:
        raise ValueError("a, b must be coprime positive integers")


@dataclass(frozen=True)
class NodalCurve:
    """a x y (s - t)^2 = b s t (x - y)^2"""

    a: int
    b: int

    def __post_init__(self):
        _check_ab(self.a, self.b)


@dataclass(frozen=True)
class CuspidalCurve:
    """b^2 (y - x)^2 s t + a^2 (t - s)^2 x y - 2ab y t (y - x)(t - s) = 0"""

    a: int
    b: int

    def __post_init__(self):
        _check_ab(self.a, self.b)


@dataclass(frozen=True)
class Line:
    index: int

    def __post_init__(self):
        if self.index not in (1, 2, 3):
            raise ValueError("line index must be 1, 2 or 3")


def alpha_of(desc: CurveDescriptor):
    """min over branches of d / (m r); math.inf when every branch is complex."""
    best = INFINITY
    for br in desc.branches:
        r = br.field_class.value
        if r == 0:
            continue
        best = min(best, Fraction(desc.degree, br.multiplicity * r))
    return best


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def node_tangents_rational(curve: NodalCurve) -> bool:
    """The tangents at Q have slopes +-sqrt(b/a)."""
    return is_square(curve.a * curve.b)


def descriptor(curve) -> CurveDescriptor:
    if isinstance(curve, Line):
        return CurveDescriptor(2, (BranchData(1, FieldClass.RATIONAL),))
    if isinstance(curve, CuspidalCurve):
        return CurveDescriptor(5, (BranchData(2, FieldClass.RATIONAL),))
    if isinstance(curve, NodalCurve):
        if node_tangents_rational(curve):
            br = BranchData(1, FieldClass.RATIONAL)
            return CurveDescriptor(5, (br, br))
        return CurveDescriptor(5, (BranchData(1, FieldClass.REAL_QUADRATIC),))
    raise TypeError(f"no descriptor for {curve!r}")


def contains(curve, c: ChartPoint) -> bool:
    w, z = c.w, c.z
    if isinstance(curve, Line):
        return (w, z, line3_value(c))[curve.index - 1] == 0
    a, b = curve.a, curve.b
    if isinstance(curve, NodalCurve):
        return a * (1 + w) * z * z == b * (1 + z) * w * w
    if isinstance(curve, CuspidalCurve):
        return (a * z - b * w) ** 2 + z * w * (a * a * z + b * b * w) == 0
    raise TypeError(f"unknown curve {curve!r}")


def contains_projective(curve, P: ProjPointPair) -> bool:
    """Same test on the homogeneous equation, no chart involved."""
    x, y, s, t = P.x, P.y, P.s, P.t
    if isinstance(curve, Line):
        return (x - y, s - t, y * t - x * s)[curve.index - 1] == 0
    a, b = curve.a, curve.b
    if isinstance(curve, NodalCurve):
        return a * x * y * (s - t) ** 2 == b * s * t * (x - y) ** 2
    if isinstance(curve, CuspidalCurve):
        return (b * b * (y - x) ** 2 * s * t + a * a * (t - s) ** 2 * x * y
                - 2 * a * b * y * t * (y - x) * (t - s)) == 0
    raise TypeError(f"unknown curve {curve!r}")


def cusp_point(a: int, b: int, tau) -> ChartPoint:
    """Point of the cuspidal curve on the ray z = tau w."""
    tau = Fraction(tau)
    den = tau * (a * a * tau + b * b)
    if den == 0:
        raise PoleParameter(f"tau = {tau} is a pole of the parametrization")
    w = -(a * tau - b) ** 2 / den
    return ChartPoint(w, tau * w)


def cusp_points(a: int, b: int, taus) -> list:
    return [cusp_point(a, b, tau) for tau in taus]


def line_point(i: int, n: int) -> ProjPointPair:
    if n < 1:
        raise ValueError("n must be >= 1")
    if i == 1:
        return ProjPointPair.of(1, 1, n, n + 1)
    if i == 2:
        return ProjPointPair.of(n, n + 1, 1, 1)
    if i == 3:
        return ProjPointPair.of(n, n + 1, n + 1, n)
    raise ValueError("line index must be 1, 2 or 3")


def line_points(i: int, n_range) -> list:
    return [line_point(i, n) for n in n_range]


def best_approximants(points):
    """Points that beat every point of smaller height in distance."""
    pts = sorted((h, d) for h, d in points if d > 0)
    out = []
    best = None
    for h, d in pts:
        if best is None or d < best:
            out.append((h, d))
            best = d
    return out


def _lower_hull(xy):
    hull = []
    for p in xy:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def empirical_alpha(points) -> float:
    """Estimate the approximation constant from (height, distance) pairs.

    Keeps the best approximants, takes the lower convex envelope in the plane
    (-log d, log H) and returns the least-squares slope of that envelope.
    """
    points = [(h, d) for h, d in points if d > 0]
    if len(points) < 10:
        raise TooFewPoints(f"need at least 10 points, got {len(points)}")
    front = best_approximants(points)
    xy = sorted((-math.log(float(d)), math.log(float(h))) for h, d in front)
    hull = _lower_hull(xy)
    if len(hull) < 2:
        raise TooFewPoints("frontier has fewer than two distinct points")
    X = np.array([p[0] for p in hull])
    Y = np.array([p[1] for p in hull])
    slope, _ = np.polyfit(X, Y, 1)
    return float(slope)
