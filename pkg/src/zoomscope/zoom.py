"""Points of bounded height in shrinking windows around Q.

A query asks for every point P with height(P) <= B and
B^(1/r) * distance(chart(P)) <= epsilon.  Off the three lines the points are
found in two independent ways:

* ``brute_enumerate`` rebuilds each point from its gcd data
  (x - y, s - t, gcd(y, t), gcd(x, t), gcd(y, s) and the cofactors);
* ``param_enumerate`` runs through the Pell families (C3, D) and solves the
  congruence u + v | L (C3 u^2 + D) for the nodal parameters.

Points on the lines are enumerated (or just counted) directly.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd, isqrt, sqrt

import numpy as np

from .congruence import QuadPoly, RootFinder, spf_table
from .errors import (DegenerateSeries, UnsupportedZoomFactor, WindowTooLarge,
                     WrongRegion)
from .pell import GcdProfile, UVParams, ab_from_uv, PellFamily, gcd_profile
from .surface import (Q, ChartPoint, ProjPointPair, Region, chart, distance,
                      height, is_thin, region_of)

MARGIN = 1 + 1e-9
LINE_REGIONS = (Region.LINE1, Region.LINE2, Region.LINE3)


def as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("pass exact rationals (int, Fraction or 'p/q'), not floats")
    return Fraction(x)


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 2:
        return n
    x = int(round(n ** (1.0 / k))) if n < 1 << 1000 else 1 << (n.bit_length() // k + 1)
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


class Window:
    """The exact window B^(1/r) * d <= epsilon and its float shadows."""

    def __init__(self, B: int, r, epsilon):
        self.B = int(B)
        self.r = as_fraction(r)
        self.epsilon = as_fraction(epsilon)
        if self.B < 1 or self.r <= 0 or self.epsilon <= 0:
            raise ValueError("need B >= 1, r > 0, epsilon > 0")
        # B^(1/r) = B^(b/a) with r = a/b
        self.a, self.b = self.r.numerator, self.r.denominator
        self._Bb = self.B ** self.b
        self.scale = self.B ** (self.b / self.a)
        self.rho = float(self.epsilon) / self.scale

    def check_chart_radius(self):
        """The chart radius epsilon * B^(-1/r) must stay below 1."""
        a = self.a
        if self.epsilon.numerator ** a >= self._Bb * self.epsilon.denominator ** a:
            raise WindowTooLarge(f"epsilon * B^(-1/r) = {self.rho:.4g} >= 1")

    def contains_distance(self, d: Fraction) -> bool:
        a = self.a
        e = self.epsilon
        return self._Bb * (d.numerator * e.denominator) ** a <= (e.numerator * d.denominator) ** a

    def contains_ratio(self, num: int, den: int) -> bool:
        """Window test for d = num/den with num >= 0, den > 0 (not reduced)."""
        a = self.a
        e = self.epsilon
        return self._Bb * (num * e.denominator) ** a <= (e.numerator * den) ** a

    def cmp_scaled(self, value: Fraction, bound: Fraction) -> int:
        """Sign of B^(1/r) * value - bound, decided exactly."""
        value, bound = Fraction(value), Fraction(bound)
        if value == 0 or bound == 0 or (value > 0) != (bound > 0):
            sv = (value > 0) - (value < 0)
            return sv if sv != 0 else -((bound > 0) - (bound < 0))
        a = self.a
        lhs = self._Bb * (abs(value.numerator) * bound.denominator) ** a
        rhs = (abs(bound.numerator) * value.denominator) ** a
        c = (lhs > rhs) - (lhs < rhs)
        return c if value > 0 else -c

    def scaled(self, c: ChartPoint):
        return (float(c.w) * self.scale, float(c.z) * self.scale)

    def __repr__(self):
        return f"Window(B={self.B}, r={self.r}, epsilon={self.epsilon})"


@dataclass(frozen=True)
class ZoomQuery:
    B: int
    r: Fraction = Fraction(5, 2)
    epsilon: Fraction = Fraction(2)
    region_filter: frozenset | None = None
    exclude_lines: bool = False
    exclude_thin: bool = False
    exclude_Q: bool = True

    def __post_init__(self):
        object.__setattr__(self, "r", as_fraction(self.r))
        object.__setattr__(self, "epsilon", as_fraction(self.epsilon))
        if self.region_filter is not None:
            object.__setattr__(self, "region_filter", frozenset(self.region_filter))
        if self.B < 1 or self.r <= 0 or self.epsilon <= 0:
            raise ValueError("need B >= 1, r > 0, epsilon > 0")

    @property
    def window(self) -> Window:
        return Window(self.B, self.r, self.epsilon)


@dataclass(frozen=True)
class PointRecord:
    point: ProjPointPair
    chart: ChartPoint
    height: int
    region: Region
    thin: bool
    profile: GcdProfile | None
    window: Window = field(compare=False, repr=False)

    @property
    def scaled(self):
        """(B^(1/r) w, B^(1/r) z) as floats, for display only."""
        return self.window.scaled(self.chart)

    @property
    def key(self):
        p = self.point
        return (self.height, p.x, p.y, p.s, p.t)


@dataclass
class CountReport:
    B: int
    r: Fraction
    epsilon: Fraction
    on_lines: int
    thin: int
    generic: int

    @property
    def total(self):
        return self.on_lines + self.thin + self.generic

    @property
    def off_lines(self):
        return self.thin + self.generic

    @property
    def normalized(self):
        root = self.B ** 0.2
        logB = math.log(self.B) if self.B > 1 else float("nan")
        return {
            "generic/B^(1/5)": self.generic / root,
            "thin/B^(1/5)": self.thin / root,
            "thin/(B^(1/5) log B)": self.thin / (root * logB),
            "on_lines/B^(1/5)": self.on_lines / root,
        }

    def to_dict(self):
        return {
            "B": self.B, "r": str(self.r), "epsilon": str(self.epsilon),
            "buckets": {"on_lines": self.on_lines, "thin": self.thin,
                        "generic": self.generic, "total": self.total},
            "normalized": {k: round(v, 12) for k, v in self.normalized.items()},
        }


# ---------------------------------------------------------------- records

def make_record(P: ProjPointPair, win: Window, H: int | None = None,
                params: UVParams | None = None) -> PointRecord:
    c = chart(P)
    reg = region_of(c)
    if H is None:
        H = height(P)
    prof = None
    if reg.base in (Region.S1, Region.S2, Region.S3, Region.S4):
        if params is None:
            params = _params_of_chart(c)
        prof = gcd_profile(params)
    return PointRecord(P, c, H, reg, is_thin(c), prof, win)


def _params_of_chart(c: ChartPoint) -> UVParams:
    w, z = c.w, c.z
    ratio = z / w
    ba = z * z * (1 + w) / (w * w * (1 + z))
    return UVParams.of(ba.denominator, ba.numerator, ratio.numerator, ratio.denominator)


def _accept(rec: PointRecord, q: ZoomQuery) -> bool:
    if q.exclude_Q and rec.region is Region.AT_Q:
        return False
    if q.exclude_lines and rec.region in LINE_REGIONS:
        return False
    if q.exclude_thin and rec.thin:
        return False
    if q.region_filter is not None and rec.region not in q.region_filter:
        return False
    return True


def _finish(records, q: ZoomQuery):
    out = [r for r in records if _accept(r, q)]
    out.sort(key=lambda r: r.key)
    return out


# ------------------------------------------------------------ line points

def _first_in_window(win: Window, delta: int) -> int:
    """Least m >= 1 with B^(1/r) |delta| / m <= epsilon."""
    a = win.a
    e = win.epsilon
    target = win._Bb * (abs(delta) * e.denominator) ** a
    m = -(-iroot(target, a) // e.numerator)
    m = max(m - 2, 1)
    while (e.numerator * m) ** a < target:
        m += 1
    return m


def _line_delta_ranges(win: Window):
    """For each line and delta, the admissible range of the smaller coordinate.

    Line 1: [1:1] x [t+delta : t]; line 2: [y+delta : y] x [1:1];
    line 3: [m+|delta| : m] x [m : m+|delta|] and its swap.  On each line the
    height is the square of the larger coordinate, and the distance is
    |delta| divided by the smaller one.
    """
    R = isqrt(win.B)
    delta = 1
    while True:
        lo = _first_in_window(win, delta)
        if lo + delta > R and lo > R:
            break
        # delta > 0: larger coordinate is m + delta; delta < 0: the larger is m
        # for lines 1 and 2 (denominator is the larger one), for line 3 the
        # smaller coordinate is always the denominator.
        yield delta, lo, R
        delta += 1


def _mobius_coprime_count(lo: int, hi: int, n: int) -> int:
    """#{m in [lo, hi] : gcd(m, n) = 1}."""
    if hi < lo:
        return 0
    primes = []
    k = n
    p = 2
    while p * p <= k:
        if k % p == 0:
            primes.append(p)
            while k % p == 0:
                k //= p
        p += 1
    if k > 1:
        primes.append(k)
    total = 0
    for mask in range(1 << len(primes)):
        d = 1
        bits = 0
        for i, p in enumerate(primes):
            if mask >> i & 1:
                d *= p
                bits += 1
        cnt = hi // d - (lo - 1) // d
        total += -cnt if bits & 1 else cnt
    return total


def count_line_points(B: int, r=Fraction(5, 2), epsilon=Fraction(2)) -> dict:
    """Number of in-window points on each of the three lines (Q excluded)."""
    win = Window(B, r, epsilon)
    win.check_chart_radius()
    counts = {1: 0, 2: 0, 3: 0}
    R = isqrt(win.B)
    for delta, lo, _ in _line_delta_ranges(win):
        # lines 1, 2: coordinate pair (m, m + delta) with the distance measured
        # against the denominator m' in {m, m + delta}:
        #   +delta: denominator m, larger m + delta <= R
        #   -delta: denominator m + delta (larger), smaller m >= 1
        plus = _mobius_coprime_count(lo, R - delta, delta)
        minus = _mobius_coprime_count(max(lo, delta + 1), R, delta)
        counts[1] += plus + minus
        counts[2] += plus + minus
        # line 3: distance against the smaller coordinate m; larger m + delta
        counts[3] += 2 * _mobius_coprime_count(lo, R - delta, delta)
    return counts


def line_records(win: Window) -> list:
    """All in-window points on the three lines, Q excluded."""
    win.check_chart_radius()
    out = []
    R = isqrt(win.B)
    for delta, lo, _ in _line_delta_ranges(win):
        for m in range(lo, R - delta + 1):
            if gcd(m, delta) != 1:
                continue
            pts = (ProjPointPair.of(1, 1, m + delta, m),
                   ProjPointPair.of(m + delta, m, 1, 1),
                   ProjPointPair.of(m + delta, m, m, m + delta),
                   ProjPointPair.of(m, m + delta, m + delta, m))
            for P in pts:
                out.append(make_record(P, win, max(m, m + delta) ** 2))
        for m in range(max(lo, delta + 1), R + 1):
            if gcd(m, delta) != 1:
                continue
            for P in (ProjPointPair.of(1, 1, m - delta, m), ProjPointPair.of(m - delta, m, 1, 1)):
                out.append(make_record(P, win, m * m))
    return out


# ------------------------------------------------------- off-line: brute

def _small_divisors(spf, n):
    divs = [1]
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        divs = [d * p ** i for d in divs for i in range(e + 1)]
    return divs


def _divisor_function(limit):
    if limit <= 5_000_000:
        spf = spf_table(max(limit, 2))
        return lambda n: _small_divisors(spf, n)
    from .congruence import factorize

    def divs(n):
        out = [1]
        for p, e in factorize(n):
            out = [d * p ** i for d in out for i in range(e + 1)]
        return out
    return divs


def _liouville_budget(win: Window) -> float:
    """Upper bound for sqrt(f1 f2 f3) |x - y| |s - t| on in-window points.

    Every off-line point satisfies H |wz| sqrt|wz + w + z| >= that product,
    and in the window the left side is at most B rho^(5/2) sqrt(2 + rho).
    """
    rho = win.rho * MARGIN
    return win.B * rho ** 2.5 * sqrt(2 + rho) * MARGIN


def _brute_tuples(win: Window):
    """Outer loop data (|x-y|, |s-t|) for the gcd reconstruction."""
    K = _liouville_budget(win)
    for d1 in range(1, floor(K) + 1):
        for d2 in range(1, floor(K / d1) + 1):
            yield d1, d2


def _brute_chunk(win: Window, pairs) -> list:
    """Points for the listed (|x - y|, |s - t|) pairs."""
    B = win.B
    rho = win.rho * MARGIN
    K = _liouville_budget(win)
    top = B * rho * rho * MARGIN  # bound for e1 * |d1 d2| * f1 * f2
    nmax = int(top * top) + int(K * K) + 2
    divisors = _divisor_function(nmax)
    found = []
    for d1, d2 in pairs:
        R2 = (K / (d1 * d2)) ** 2
        e_top = top / (d1 * d2)
        for f1 in range(1, floor(R2) + 1):
            for f2 in range(1, floor(R2 / f1) + 1):
                f12 = f1 * f2
                e1_hi = floor(e_top / f12)
                if e1_hi < 1:
                    break
                f3_hi = min(floor(R2 / f12), floor(2 * (2 + rho) * rho * f12 * e1_hi * e1_hi) + 1)
                for f3 in range(1, f3_hi + 1):
                    e1_lo = max(1, floor(sqrt(f3 / ((2 + rho) * rho * f12)) / MARGIN))
                    for e1 in range(e1_lo, e1_hi + 1):
                        base = f12 * e1 * e1
                        for sg in (1, -1):
                            N = base - sg * f3
                            if N < 1:
                                continue
                            det = -sg * f3
                            for g1 in divisors(N):
                                g2 = N // g1
                                for dx in (d1, -d1):
                                    for dt in (d2, -d2):
                                        n2 = g2 * dx + f1 * e1 * dt
                                        n3 = f2 * e1 * dx + g1 * dt
                                        if n2 % det or n3 % det:
                                            continue
                                        e2, e3 = n2 // det, n3 // det
                                        if e2 < 1 or e3 < 1:
                                            continue
                                        y = f1 * e1 * e3
                                        t = f2 * e1 * e2
                                        x, s = y + dx, t + dt
                                        if x < 1 or s < 1:
                                            continue
                                        if (gcd(x, y) != 1 or gcd(s, t) != 1 or gcd(y, t) != e1
                                                or gcd(x, t) != e2 or gcd(y, s) != e3):
                                            continue
                                        found.append((x, y, s, t))
    out = []
    for x, y, s, t in found:
        # distance is max(|dx|/y, |dt|/t)
        dx, dt = abs(x - y), abs(s - t)
        num, den = (dx, y) if dx * t >= dt * y else (dt, t)
        if not win.contains_ratio(num, den):
            continue
        P = ProjPointPair(x, y, s, t)
        H = height(P)
        if H <= B:
            out.append(P)
    return out


def _run_chunks(fn, win, items, workers):
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return fn(win, items)
    chunks = [items[i::workers] for i in range(workers)]
    out = []
    with ProcessPoolExecutor(max_workers=workers) as ex:
        for part in ex.map(fn, [win] * workers, chunks):
            out.extend(part)
    return out


def offline_brute(win: Window, workers: int = 1) -> list:
    """Off-line in-window points from the gcd reconstruction."""
    win.check_chart_radius()
    return _run_chunks(_brute_chunk, win, _brute_tuples(win), workers)


def offline_scan(win: Window) -> list:
    """Naive off-line scan over y t <= B; only for tiny B.

    Every off-line point has height >= y t (the y^2 t^2 section), so the
    loop bounds need nothing beyond that.
    """
    win.check_chart_radius()
    B = win.B
    rho = win.rho * MARGIN
    out = []
    for y in range(1, B + 1):
        for t in range(1, B // y + 1):
            for dx in range(-floor(rho * y), floor(rho * y) + 1):
                if dx == 0 or gcd(y + dx, y) != 1:
                    continue
                x = y + dx
                for dt in range(-floor(rho * t), floor(rho * t) + 1):
                    s = t + dt
                    if dt == 0 or x * s == y * t or gcd(s, t) != 1:
                        continue
                    P = ProjPointPair(x, y, s, t)
                    if not win.contains_distance(distance(chart(P))):
                        continue
                    if height(P) <= B:
                        out.append(P)
    return out


def brute_enumerate(q: ZoomQuery, workers: int = 1) -> list:
    """Every in-window point (lines included unless excluded)."""
    win = q.window
    recs = [make_record(P, win) for P in offline_brute(win, workers)]
    if not q.exclude_lines:
        recs.extend(line_records(win))
    if not q.exclude_Q:
        recs.append(make_record(Q, win, 1))
    return _finish(recs, q)


# ------------------------------------------------------- off-line: param

def _lcm_upto(n):
    out = 1
    for i in range(2, n + 1):
        out = out * i // gcd(out, i)
    return out


def _solve_nmax(cap_fn, coef, start=1):
    """Largest n with n^2 <= coef * cap_fn(n) (cap grows slower than n^2)."""
    lo, hi = 0, max(start, 2)
    while hi * hi <= coef * cap_fn(hi):
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid * mid <= coef * cap_fn(mid):
            lo = mid
        else:
            hi = mid
    return lo


@dataclass
class FamilyPlan:
    C3: int
    D: int
    L: int
    sigma: float
    p_lo_same: float
    cap_const: float  # P <= cap_const (from the distance of w to 0)
    n_lo_same: int
    n_hi_same: int
    n_hi_opp: int


def family_plans(win: Window) -> list:
    """The Pell families that can reach the window, with their loop bounds."""
    B = win.B
    rho = win.rho * MARGIN
    K = _liouville_budget(win)
    if K < 1:
        return []
    plans = []
    for C3 in range(1, floor(K * K) + 1):
        for Dabs in range(1, floor(K * K / C3) + 1):
            if gcd(C3, Dabs) != 1:
                continue
            S = sqrt(C3 * Dabs)
            sigma = K / S * MARGIN
            if sigma <= 1:
                continue
            Wmax = floor((K / S) ** (1 / 3) * MARGIN)
            L = _lcm_upto(max(Wmax, 1))
            lam = Dabs / C3
            wmin = S / (B * rho ** 1.5 * sqrt(2 + rho)) / MARGIN
            cap_const = lam * (1 + 2 / wmin) * MARGIN + 1

            def cap(n, C3=C3, Dabs=Dabs, cap_const=cap_const):
                return min(cap_const, ((C3 * B * n ** 3 * Dabs * Dabs) ** 0.25 + Dabs) / C3 * MARGIN + 1)

            kappa = sigma + 2 + 1 / sigma
            n_hi_same = _solve_nmax(cap, kappa)
            p_lo_same = lam * (2 / rho - 1) / MARGIN if rho < 2 else 0
            n_lo_same = max(3, floor(2 * sqrt(max(p_lo_same, 0))) - 1)
            n_hi_opp = _solve_nmax(cap, (sigma - 1) ** 2 / sigma)
            for D in (Dabs, -Dabs):
                plans.append(FamilyPlan(C3, D, L, sigma, p_lo_same, cap_const,
                                        n_lo_same, n_hi_same, n_hi_opp))
    return plans


def _param_chunk(win: Window, plans) -> list:
    B = win.B
    out = []
    nmax = max([max(p.n_hi_same, p.n_hi_opp) for p in plans] + [2])
    spf = spf_table(nmax + 1)
    inv_scale = win.scale
    e = win.epsilon
    ep, eq = e.numerator, e.denominator
    for plan in plans:
        C3, D, L, sigma = plan.C3, plan.D, plan.L, plan.sigma
        Dabs = abs(D)
        finder = RootFinder(QuadPoly(C3, D), spf)

        def cap(n):
            return min(plan.cap_const, ((C3 * B * n ** 3 * Dabs * Dabs) ** 0.25 + Dabs) / C3 * MARGIN + 1)

        def consider(u, v, n):
            m = C3 * u * v - D
            if m == 0:
                return
            small = min(abs(u), abs(v))
            # window: |D| n / (small |m|) scaled by B^(1/r) against epsilon
            lhs = inv_scale * Dabs * n * eq
            rhs = ep * small * abs(m)
            if lhs > rhs * MARGIN:
                return
            if lhs >= rhs / MARGIN and not win.contains_ratio(Dabs * n, small * abs(m)):
                return
            if C3 * u * u + D <= 0 or C3 * v * v + D <= 0:
                return
            k = D * (u + v)
            x, y = u * m + k, u * m
            s, t = v * m + k, v * m
            P = ProjPointPair.of(x, y, s, t)
            H = height(P)
            if H <= B:
                out.append((P, H, C3, D, u, v))

        # u, v > 0: n = u + v
        lo_ratio = 1 / (1 + sigma)
        for n in range(plan.n_lo_same, plan.n_hi_same + 1):
            nn = n // gcd(n, L)
            roots = finder.roots(nn)
            if not roots:
                continue
            pmax = cap(n)
            pmin = plan.p_lo_same
            ua = max(1, floor(n * lo_ratio / MARGIN))
            ub = min(n - 1, ceil(n * sigma * lo_ratio * MARGIN))
            for r0 in roots:
                u = ua + ((r0 - ua) % nn)
                while u <= ub:
                    v = n - u
                    P_ = u * v
                    if pmin <= P_ <= pmax and u != v and gcd(u, v) == 1:
                        consider(u, v, n)
                    u += nn
        # u > 0 > v: n = |u + v|, p = min(u, -v)
        if sigma > 1:
            for n in range(1, plan.n_hi_opp + 1):
                nn = n // gcd(n, L)
                roots = finder.roots(nn)
                if not roots:
                    continue
                pmax = cap(n)
                p_lo = max(1, floor(n / (sigma - 1) / MARGIN))
                p_hi = floor((-n + sqrt(n * n + 4 * pmax)) / 2 * MARGIN) + 1
                if p_hi < p_lo:
                    continue
                for r0 in roots:
                    # u = p + n, v = -p
                    lo = p_lo + n
                    u = lo + ((r0 - lo) % nn)
                    while u <= p_hi + n:
                        p = u - n
                        if gcd(u, p) == 1:
                            consider(u, -p, n)
                        u += nn
                    # u = p, v = -(p + n)
                    u = p_lo + ((r0 - p_lo) % nn)
                    while u <= p_hi:
                        if gcd(u, u + n) == 1:
                            consider(u, -(u + n), n)
                        u += nn
    return out


def diagonal_points(win: Window) -> list:
    """In-window points [x:y] x [x:y] with x != y; their height is max(x, y)^3."""
    win.check_chart_radius()
    out = []
    top = iroot(win.B, 3)
    rho = win.rho * MARGIN
    for y in range(1, top + 2):
        for dx in range(-floor(rho * y), floor(rho * y) + 1):
            x = y + dx
            if dx == 0 or x < 1 or gcd(x, y) != 1:
                continue
            if not win.contains_ratio(abs(dx), y):
                continue
            P = ProjPointPair(x, y, x, y)
            H = height(P)
            if H <= win.B:
                out.append((P, H))
    return out


def antidiagonal_points(win: Window) -> list:
    """In-window points with z = -w, i.e. [y+d : y] x [y-d : y].

    They form the u + v = 0 slice of the family (1, -1), where the family
    chart degenerates.  Their height is at least y^3.
    """
    win.check_chart_radius()
    out = []
    top = iroot(win.B, 3)
    rho = win.rho * MARGIN
    for y in range(2, top + 2):
        for dx in range(1, floor(rho * y) + 1):
            if gcd(dx, y) != 1 or not win.contains_ratio(dx, y):
                continue
            for P in (ProjPointPair(y + dx, y, y - dx, y), ProjPointPair(y - dx, y, y + dx, y)):
                H = height(P)
                if H <= win.B:
                    out.append((P, H))
    return out


def offline_param(win: Window, workers: int = 1) -> list:
    """(point, height, params) triples off the lines, via the Pell families."""
    if win.r != Fraction(5, 2):
        raise UnsupportedZoomFactor("the family bounds are derived for r = 5/2")
    win.check_chart_radius()
    plans = family_plans(win)
    raw = _run_chunks(_param_chunk, win, plans, workers)
    out = []
    for P, H, C3, D, u, v in raw:
        a, b, _ = ab_from_uv(PellFamily(C3, D), u, v)
        out.append((P, H, UVParams.of(a, b, u, v)))
    for P, H in diagonal_points(win):
        out.append((P, H, None))
    for P, H in antidiagonal_points(win):
        out.append((P, H, _params_of_chart(chart(P))))
    return out


def param_enumerate(q: ZoomQuery, workers: int = 1) -> list:
    """Off-line in-window points through the Pell families (r = 5/2 only)."""
    win = q.window
    recs = [make_record(P, win, H, params) for P, H, params in offline_param(win, workers)]
    return _finish(recs, q)


# --------------------------------------------------------------- reports

def bounds_used(win: Window) -> dict:
    """The loop bounds an enumeration of this window runs with."""
    K = _liouville_budget(win)
    out = {"liouville_budget": round(K, 9), "C3max": floor(K * K), "Dmax": floor(K * K),
           "Wmax": floor(K ** (1 / 3)) if K >= 1 else 0,
           "line_coordinate_max": isqrt(win.B)}
    if win.r == Fraction(5, 2) and K >= 1:
        out["families"] = len(family_plans(win))
    return out


def thin_split(records, B=None, r=None, epsilon=None) -> CountReport:
    on = thin = gen = 0
    for rec in records:
        if rec.region in LINE_REGIONS or rec.region is Region.AT_Q:
            on += 1
        elif rec.thin:
            thin += 1
        else:
            gen += 1
    if records and B is None:
        w = records[0].window
        B, r, epsilon = w.B, w.r, w.epsilon
    return CountReport(B, r, epsilon, on, thin, gen)


def survey(q: ZoomQuery, strategy: str = "param", workers: int = 1):
    """Off-line records plus a count of line points, as (records, report).

    Line points are only counted, never materialized, so large B is cheap.
    """
    win = q.window
    if strategy == "param" and win.r == Fraction(5, 2):
        trip = offline_param(win, workers)
        recs = [make_record(P, win, H, pr) for P, H, pr in trip]
    else:
        recs = [make_record(P, win) for P in offline_brute(win, workers)]
    recs = [r for r in recs if _accept(r, q)]
    recs.sort(key=lambda r: r.key)
    lines = 0
    if not q.exclude_lines:
        for idx, n in count_line_points(q.B, q.r, q.epsilon).items():
            if q.region_filter is None or LINE_REGIONS[idx - 1] in q.region_filter:
                lines += n
        if not q.exclude_Q and (q.region_filter is None or Region.AT_Q in q.region_filter):
            lines += 1  # Q itself, height 1
    rep = thin_split(recs, q.B, q.r, q.epsilon)
    rep.on_lines += lines
    return recs, rep


@dataclass(frozen=True)
class Trapezoid:
    """eps2 < z0 <= eps1 and theta2 w < z < theta1 w, in scaled coordinates."""

    eps2: Fraction
    eps1: Fraction
    theta2: Fraction
    theta1: Fraction

    def contains(self, rec: PointRecord) -> bool:
        w, z = rec.chart.w, rec.chart.z
        win = rec.window
        if not (win.cmp_scaled(z, self.eps2) > 0 and win.cmp_scaled(z, self.eps1) <= 0):
            return False
        return self.theta2 * w < z < self.theta1 * w


@dataclass(frozen=True)
class Ball:
    radius: Fraction

    def contains(self, rec: PointRecord) -> bool:
        return rec.window.cmp_scaled(distance(rec.chart), Fraction(self.radius)) <= 0


def zoom_measure(records, shape) -> int:
    return sum(1 for rec in records if shape.contains(rec))


def threshold_stat(rec: PointRecord, B: int) -> Fraction:
    """B^2 (wz)^2 (w + z) for an S1 record."""
    if rec.region is not Region.S1:
        raise WrongRegion(f"record lies in {rec.region.value}, not S1")
    w, z = rec.chart.w, rec.chart.z
    return B * B * (w * z) ** 2 * (w + z)


def profile_threshold_sq(prof: GcdProfile) -> Fraction:
    """(|D|^(5/2) C3^(1/2) W^3 / (D1^2 D2^2))^2."""
    return Fraction(abs(prof.D) ** 5 * prof.C3 * prof.W ** 6, (prof.D1 * prof.D2) ** 4)


def fit_exponent(series):
    """Least-squares slope of log(count) against log(B), with its stderr."""
    pts = [(float(b), float(c)) for b, c in series]
    if len(pts) < 3 or any(c <= 0 for _, c in pts) or len({b for b, _ in pts}) < 2:
        raise DegenerateSeries("need >= 3 points with positive counts and distinct B")
    X = np.log([b for b, _ in pts])
    Y = np.log([c for _, c in pts])
    A = np.vstack([X, np.ones_like(X)]).T
    coef, *_ = np.linalg.lstsq(A, Y, rcond=None)
    resid = Y - A @ coef
    dof = len(X) - 2
    sxx = float(((X - X.mean()) ** 2).sum())
    stderr = math.sqrt(float(resid @ resid) / dof / sxx) if dof > 0 else 0.0
    return float(coef[0]), stderr


def alpha_survey(B_max: int, epsilon=Fraction(2), start: int = 2):
    """(height, distance) of generic points collected over B = 10^start..B_max."""
    seen = {}
    j = start
    while 10 ** j <= B_max:
        q = ZoomQuery(10 ** j, Fraction(5, 2), epsilon, exclude_lines=True, exclude_thin=True)
        recs, _ = survey(q)
        for rec in recs:
            seen[rec.point] = (rec.height, distance(rec.chart))
        j += 1
    return sorted(seen.values())
