"""Complete smooth toric surfaces: positive relations among rays and the
degree inequalities a rational curve must meet to enter a zoom of factor r.

Rays are numbered as listed; maximal cones are angularly adjacent pairs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import gcd

import numpy as np

from .errors import EmptyInput, UnknownSurface

_P2 = [(1, 0), (0, 1), (-1, -1)]
BUILTIN_RAYS = {
    "P2": _P2,
    "X1": _P2 + [(-1, 0)],
    "X2": _P2 + [(-1, 0), (1, 1)],
    "X3": _P2 + [(-1, 0), (0, -1), (1, 1)],
    "P1xP1": [(1, 0), (0, 1), (-1, 0), (0, -1)],
    "Y3": _P2 + [(-1, 0), (0, -1), (1, 1), (1, -1)],
    "Y4": _P2 + [(-1, 0), (0, -1), (1, 1), (1, -1), (-1, 1)],
}


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _half(v):
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _angle_cmp(a, b):
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    c = _cross(a, b)
    return -1 if c > 0 else (1 if c < 0 else 0)


@dataclass(frozen=True)
class Fan:
    name: str
    rays: tuple
    maximal_cones: tuple

    @classmethod
    def from_rays(cls, name: str, rays) -> "Fan":
        rays = tuple(tuple(int(c) for c in r) for r in rays)
        if any(len(r) != 2 for r in rays):
            raise ValueError("only 2-dimensional fans are supported")
        if len(rays) < 3:
            raise ValueError("a complete fan in the plane needs at least 3 rays")
        if len(set(rays)) != len(rays):
            raise ValueError("rays must be pairwise distinct")
        for r in rays:
            if gcd(*r) != 1:
                raise ValueError(f"ray {r} is not primitive")
        order = sorted(range(len(rays)), key=cmp_to_key(lambda i, j: _angle_cmp(rays[i], rays[j])))
        cones = []
        for k, i in enumerate(order):
            j = order[(k + 1) % len(order)]
            det = _cross(rays[i], rays[j])
            if det <= 0:
                raise ValueError("rays do not span a complete fan")
            if det != 1:
                raise ValueError(f"cone {rays[i]}, {rays[j]} is not smooth (det {det})")
            cones.append((i, j))
        return cls(name, rays, tuple(cones))

    def adjacent(self, i: int, j: int) -> bool:
        return (i, j) in self.maximal_cones or (j, i) in self.maximal_cones

    def to_json(self) -> str:
        return json.dumps({"name": self.name, "rays": [list(r) for r in self.rays]})

    @classmethod
    def from_json(cls, text: str) -> "Fan":
        d = json.loads(text)
        return cls.from_rays(d.get("name", "custom"), d["rays"])


def builtin_fan(name: str) -> Fan:
    if name not in BUILTIN_RAYS:
        raise UnknownSurface(f"unknown surface {name!r}; choose from {', '.join(BUILTIN_RAYS)}")
    return Fan.from_rays(name, BUILTIN_RAYS[name])


@dataclass(frozen=True)
class PositiveRelation:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if any(c < 0 for c in self.coeffs) or sum(self.coeffs) < 1:
            raise ValueError("coefficients must be natural numbers, not all zero")

    @property
    def degree(self) -> int:
        return sum(self.coeffs)

    def is_relation_of(self, fan: Fan) -> bool:
        return all(sum(c * r[k] for c, r in zip(self.coeffs, fan.rays)) == 0 for k in (0, 1))

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{'' if c == 1 else c}p{i + 1}")
        return " + ".join(terms) + " = 0"


def _compositions(n: int, bound: int) -> np.ndarray:
    """All vectors in N^n with coordinate sum <= bound, one per row."""
    rows = np.zeros((1, 0), dtype=np.int64)
    sums = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        reps = bound - sums + 1
        idx = np.repeat(np.arange(len(rows)), reps)
        starts = np.cumsum(reps) - reps
        vals = np.arange(len(idx)) - np.repeat(starts, reps)
        rows = np.hstack([rows[idx], vals[:, None]])
        sums = sums[idx] + vals
    return rows


def _relation_array(fan: Fan, bound: int) -> np.ndarray:
    """Every nonzero positive relation of degree <= bound, one per row."""
    n = len(fan.rays)
    i, j = fan.maximal_cones[0]
    free = [k for k in range(n) if k not in (i, j)]
    F = _compositions(len(free), bound)
    R = np.array([fan.rays[k] for k in free], dtype=np.int64).reshape(len(free), 2)
    rhs = -(F @ R)  # c_i rho_i + c_j rho_j = rhs
    a, b = fan.rays[i], fan.rays[j]
    det = _cross(a, b)  # +-1
    ci = (rhs[:, 0] * b[1] - rhs[:, 1] * b[0]) * det
    cj = (a[0] * rhs[:, 1] - a[1] * rhs[:, 0]) * det
    C = np.zeros((len(F), n), dtype=np.int64)
    C[:, free] = F
    C[:, i] = ci
    C[:, j] = cj
    deg = C.sum(axis=1)
    keep = (ci >= 0) & (cj >= 0) & (deg >= 1) & (deg <= bound)
    C = C[keep]
    order = np.lexsort(tuple(C[:, k] for k in reversed(range(n))) + (C.sum(axis=1),))
    return C[order]


def positive_relations(fan: Fan, max_degree: int) -> list:
    if max_degree > 12:
        raise ValueError("max_degree is capped at 12")
    return [PositiveRelation(tuple(row)) for row in _relation_array(fan, max_degree).tolist()]


def irreducible_relations(fan: Fan, max_degree: int) -> list:
    """Relations that are not a sum of two positive relations."""
    rels = positive_relations(fan, max_degree)
    out = []
    for rel in rels:
        c = rel.coeffs
        if not any(s.degree < rel.degree and all(x <= y for x, y in zip(s.coeffs, c)) for s in rels):
            out.append(rel)
    return out


def decompose(rel: PositiveRelation, irreducibles) -> tuple | None:
    """Multiplicities m with rel = sum m_k P_k, or None."""
    basis = [p.coeffs for p in irreducibles]
    memo = {}

    def go(c, start):
        if not any(c):
            return ()
        key = (c, start)
        if key in memo:
            return memo[key]
        res = None
        for k in range(start, len(basis)):
            b = basis[k]
            if all(x >= y for x, y in zip(c, b)):
                rest = go(tuple(x - y for x, y in zip(c, b)), k)
                if rest is not None:
                    res = (k,) + rest
                    break
        memo[key] = res
        return res

    picks = go(rel.coeffs, 0)
    if picks is None:
        return None
    m = [0] * len(basis)
    for k in picks:
        m[k] += 1
    return tuple(m)


@dataclass(frozen=True)
class CoxInequality:
    """sum over positive support of exponent * deg f_i >= N / r.

    Comes from the character m: the monomial prod X_j^<m, rho_j> with
    numerator support `positive` and denominator support `negative`.
    """

    character: tuple
    positive: tuple  # (ray index, exponent)
    negative: tuple

    def lhs(self, coeffs) -> int:
        return sum(e * coeffs[i] for i, e in self.positive)

    def holds(self, coeffs, r) -> bool:
        r = Fraction(r)
        return r.numerator * self.lhs(coeffs) >= r.denominator * sum(coeffs)

    def induced_form(self, irreducibles, r) -> tuple:
        """Coefficients of (lhs - N/r) as a linear form in the multiplicities."""
        r = Fraction(r)
        return tuple(Fraction(self.lhs(p.coeffs)) - Fraction(p.degree) / r for p in irreducibles)

    def __str__(self):
        def mono(part):
            return "*".join(f"X{i + 1}" + (f"^{e}" if e != 1 else "") for i, e in part) or "1"
        return f"m={self.character}: {mono(self.positive)} / {mono([(i, -e) for i, e in self.negative])}"


def cox_inequalities(fan: Fan, character_bound: int = 2) -> list:
    if character_bound < 1:
        raise ValueError("character_bound must be >= 1")
    out = []
    for m1 in range(-character_bound, character_bound + 1):
        for m2 in range(-character_bound, character_bound + 1):
            if (m1, m2) == (0, 0) or gcd(m1, m2) != 1:
                continue
            if m1 < 0 or (m1 == 0 and m2 < 0):
                continue  # keep one sign
            exps = [m1 * r[0] + m2 * r[1] for r in fan.rays]
            pos = tuple((i, e) for i, e in enumerate(exps) if e > 0)
            neg = tuple((i, e) for i, e in enumerate(exps) if e < 0)
            if any(fan.adjacent(i, j) for i, _ in pos for j, _ in neg):
                continue
            out.append(CoxInequality((m1, m2), pos, neg))
    return out


def admissible_multidegrees(fan: Fan, r, degree_bound: int, character_bound: int = 2) -> list:
    """Positive relations of degree <= degree_bound meeting every inequality with N/r.

    Every positive relation is an N-combination of irreducible ones, so
    running over relations directly gives the same set as running over
    multiplicity vectors and collapsing.
    """
    if degree_bound > 40:
        raise ValueError("degree_bound is capped at 40")
    r = Fraction(r)
    C = _relation_array(fan, degree_bound)
    N = C.sum(axis=1)
    keep = np.ones(len(C), dtype=bool)
    for ineq in cox_inequalities(fan, character_bound):
        lhs = np.zeros(len(C), dtype=np.int64)
        for i, e in ineq.positive:
            lhs += e * C[:, i]
        keep &= r.numerator * lhs >= r.denominator * N
    return [PositiveRelation(tuple(row)) for row in C[keep].tolist()]


def lr_rank(admissibles) -> int:
    """Rank of the lattice spanned by the relation vectors."""
    rows = [list(map(Fraction, p.coeffs)) for p in admissibles]
    if not rows:
        raise EmptyInput("no admissible relations")
    rank = 0
    ncols = len(rows[0])
    for col in range(ncols):
        piv = next((k for k in range(rank, len(rows)) if rows[k][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for k in range(len(rows)):
            if k != rank and rows[k][col] != 0:
                f = rows[k][col] / rows[rank][col]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[rank])]
        rank += 1
    return rank


def results_json(relations, rank=None) -> str:
    d = {"relations": [list(p.coeffs) for p in relations]}
    if rank is not None:
        d["rank"] = rank
    return json.dumps(d)
