"""Roots of quadratic polynomials F(X) = lead X^2 + constant modulo n.

rho(F, n) counts roots mod n; it is multiplicative in n.  At primes not
dividing 2 * lead * constant the count does not depend on the exponent, so
the bulk of the work is one square root mod p per prime.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, isqrt

import numpy as np

from .errors import BadWindow, EmptySequence


@dataclass(frozen=True)
class QuadPoly:
    lead: int
    constant: int

    def __post_init__(self):
        if self.lead == 0 or self.constant == 0:
            raise ValueError("lead and constant must be nonzero")

    def __call__(self, x):
        return self.lead * x * x + self.constant


# ---------------------------------------------------------------- primes

def spf_table(n: int) -> np.ndarray:
    """Smallest prime factor of every integer up to n (spf[0] = spf[1] = 0)."""
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in range(2, isqrt(n) + 1):
        if spf[p] == 0:
            block = spf[p * p::p]
            block[block == 0] = p
    idx = np.nonzero(spf == 0)[0]
    spf[idx] = idx
    spf[:2] = 0
    return spf


def primes_up_to(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.nonzero(sieve)[0]


def factorize(n: int) -> list:
    """[(p, e), ...] by trial division; fine for the moduli used here."""
    out = []
    if n % 2 == 0:
        e = 0
        while n % 2 == 0:
            n //= 2
            e += 1
        out.append((2, e))
    p = 3
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 2
    if n > 1:
        out.append((n, 1))
    return out


# ---------------------------------------------------------- square roots

def sqrt_mod_prime(a: int, p: int):
    """A square root of a modulo the odd prime p, or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    zq = 2
    while pow(zq, (p - 1) // 2, p) != p - 1:
        zq += 1
    m, c, t, r = s, pow(zq, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _roots_mod_p(lead, const, p):
    if p == 2 or lead % p == 0:
        return [x for x in range(p) if (lead * x * x + const) % p == 0]
    r = sqrt_mod_prime(-const * pow(lead, -1, p), p)
    if r is None:
        return []
    return sorted({r, (p - r) % p})


@lru_cache(maxsize=1 << 16)
def prime_power_roots(lead: int, const: int, p: int, e: int) -> tuple:
    """Sorted roots of lead X^2 + const modulo p^e."""
    if e == 1:
        return tuple(_roots_mod_p(lead, const, p))
    lower = prime_power_roots(lead, const, p, e - 1)
    pk = p ** (e - 1)
    mod = pk * p
    out = []
    for r in lower:
        if (2 * lead * r) % p:
            # simple root: the Newton step gives the unique lift
            fr = lead * r * r + const
            out.append((r - fr * pow(2 * lead * r, -1, mod)) % mod)
        else:
            out.extend(x for x in range(r, mod, pk) if (lead * x * x + const) % mod == 0)
    return tuple(sorted(out))


def rho_prime_power(F: QuadPoly, p: int, e: int) -> int:
    return len(prime_power_roots(F.lead, F.constant, p, e))


def rho_naive(F: QuadPoly, n: int) -> int:
    return sum(1 for k in range(n) if F(k) % n == 0)


def rho(F: QuadPoly, n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    out = 1
    for p, e in factorize(n):
        out *= rho_prime_power(F, p, e)
        if out == 0:
            break
    return out


def crt_combine(roots_a, ma, roots_b, mb):
    """All x mod ma*mb with x = ra mod ma, x = rb mod mb."""
    inv = pow(ma, -1, mb)
    m = ma * mb
    return [(ra + ma * ((rb - ra) * inv % mb)) % m for ra in roots_a for rb in roots_b]


def roots_mod(F: QuadPoly, n: int) -> list:
    """Sorted roots of F modulo n."""
    roots, mod = [0], 1
    for p, e in factorize(n):
        pr = prime_power_roots(F.lead, F.constant, p, e)
        if not pr:
            return []
        roots = crt_combine(roots, mod, pr, p ** e)
        mod *= p ** e
    return sorted(roots)


class RootFinder:
    """Roots of a fixed F modulo many n, factoring through a shared spf table."""

    def __init__(self, F: QuadPoly, spf: np.ndarray):
        self.lead, self.const = F.lead, F.constant
        self.spf = spf
        self._pp = {}

    def _pp_roots(self, p, e):
        key = (p, e)
        r = self._pp.get(key)
        if r is None:
            r = prime_power_roots(self.lead, self.const, p, e)
            self._pp[key] = r
        return r

    def roots(self, n: int) -> list:
        if n == 1:
            return [0]
        spf = self.spf
        roots, mod = None, 1
        while n > 1:
            p = int(spf[n])
            q = 1
            e = 0
            while n % p == 0:
                n //= p
                q *= p
                e += 1
            pr = self._pp_roots(p, e)
            if not pr:
                return []
            if roots is None:
                roots, mod = list(pr), q
            else:
                roots = crt_combine(roots, mod, pr, q)
                mod *= q
        return roots


# ------------------------------------------------------------ averages

def _legendre_counts(F: QuadPoly, primes: np.ndarray) -> np.ndarray:
    """rho(p) for each prime, valid at p not dividing 2 lead const."""
    a = -F.lead * F.constant
    out = np.empty(len(primes), dtype=np.int64)
    for i, p in enumerate(primes.tolist()):
        if a % p == 0:
            out[i] = 1
        else:
            out[i] = 2 if pow(a % p, (p - 1) // 2, p) == 1 else 0
    return out


def rho_table(F: QuadPoly, X: int) -> np.ndarray:
    """Array with rho(F, n) at index n for 1 <= n <= X (index 0 unused)."""
    table = np.ones(X + 1, dtype=np.int64)
    table[0] = 0
    primes = primes_up_to(X)
    counts = _legendre_counts(F, primes)
    bad = 2 * F.lead * F.constant
    for p, c in zip(primes.tolist(), counts.tolist()):
        if bad % p:
            if c != 1:
                table[p::p] *= c
            continue
        # bad prime: the count depends on the exact exponent
        q, e = p, 1
        while q <= X:
            idx = np.arange(q, X + 1, q)
            table[idx[(idx // q) % p != 0]] *= rho_prime_power(F, p, e)
            q *= p
            e += 1
    return table


def rho_sum(F: QuadPoly, X: int) -> int:
    if X < 1:
        raise ValueError("X must be >= 1")
    return int(rho_table(F, X)[1:].sum())


def roots_up_to(F: QuadPoly, X: int) -> list:
    """All (v, k) with k <= X and F(v) = 0 mod k, ordered by k then v."""
    spf = spf_table(max(X, 2))
    finder = RootFinder(F, spf)
    out = []
    for k in range(1, X + 1):
        for v in sorted(finder.roots(k)):
            out.append((v, k))
    return out


def root_arrays(F: QuadPoly, X: int):
    """Numerators and denominators of roots_up_to as numpy arrays."""
    seq = roots_up_to(F, X)
    v = np.fromiter((a for a, _ in seq), dtype=np.int64, count=len(seq))
    k = np.fromiter((b for _, b in seq), dtype=np.int64, count=len(seq))
    return v, k


# --------------------------------------------------------- discrepancy

def star_discrepancy(seq) -> Fraction:
    """Exact star discrepancy of a finite sample of [0, 1).

    Floats locate the extremal order statistics; the maximum is then
    recomputed exactly on every index within a safety margin of it.
    """
    vals = [Fraction(x) for x in seq]
    if not vals:
        raise EmptySequence("star discrepancy of an empty sequence")
    return _star_discrepancy_sorted(sorted(vals))


def _star_discrepancy_sorted(vals) -> Fraction:
    N = len(vals)
    xs = np.array([float(x) for x in vals])
    i = np.arange(1, N + 1, dtype=float)
    up = i / N - xs
    down = xs - (i - 1) / N
    best = max(up.max(), down.max())
    cand = set(np.nonzero(up >= best - 1e-9)[0].tolist()) | set(np.nonzero(down >= best - 1e-9)[0].tolist())
    out = Fraction(0)
    for j in cand:
        x = vals[j]
        out = max(out, Fraction(j + 1, N) - x, x - Fraction(j, N))
    return out


def root_discrepancy(F: QuadPoly, X: int) -> Fraction:
    """Star discrepancy of the fractions v/k from roots_up_to(F, X)."""
    v, k = root_arrays(F, X)
    order = np.lexsort((k, v / k))
    v, k = v[order], k[order]
    N = len(v)
    xs = v / k
    i = np.arange(1, N + 1, dtype=float)
    up = i / N - xs
    down = xs - (i - 1) / N
    best = max(up.max(), down.max())
    out = Fraction(0)
    for j in np.nonzero((up >= best - 1e-9) | (down >= best - 1e-9))[0].tolist():
        x = Fraction(int(v[j]), int(k[j]))
        out = max(out, Fraction(j + 1, N) - x, x - Fraction(j, N))
    return out


def interval_count(F: QuadPoly, X: int, interval) -> int:
    """Number of roots v/k (k <= X) in the half-open interval [lo, hi)."""
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    v, k = root_arrays(F, X)
    # v/k >= lo  <=>  v * lo.den >= lo.num * k, all in int64 at desk scale
    ge = v * lo.denominator >= lo.numerator * k
    lt = v * hi.denominator < hi.numerator * k
    return int(np.count_nonzero(ge & lt))


# ------------------------------------------------------ central counts

class ConstantWeight:
    def __init__(self, c=1):
        self.c = Fraction(c)

    def __call__(self, x):
        return self.c

    def lower_bound(self, lo, hi):
        return self.c


class CubicWeight:
    """G(x) = scale * x * (c - x)^2, positive on (0, c)."""

    def __init__(self, c, scale=1):
        self.c = Fraction(c)
        self.scale = Fraction(scale)

    def __call__(self, x):
        x = Fraction(x)
        return self.scale * x * (self.c - x) ** 2

    def lower_bound(self, lo, hi):
        # unimodal on (0, c): the minimum over [lo, hi] sits at an endpoint
        return min(self(lo), self(hi))


def central_count(F: QuadPoly, G, A, theta2, theta1, X: int) -> int:
    """#{(l, m): m >= 1, l >= 0, F(l) = 0 mod m, theta2 <= A - l/m <= theta1,
    m^2 G(A - l/m) <= X}.

    A = theta1 is accepted as well as A > theta1 (then l = 0 may occur).
    """
    A, theta1, theta2 = Fraction(A), Fraction(theta1), Fraction(theta2)
    if A < theta1 or theta2 >= theta1:
        raise BadWindow("need A >= theta1 > theta2")
    if X <= 0:
        return 0
    gmin = G.lower_bound(theta2, theta1)
    if gmin <= 0:
        raise BadWindow("weight must be positive on the window")
    M = isqrt(int(X / gmin)) + 1
    spf = spf_table(max(M, 2))
    finder = RootFinder(F, spf)
    count = 0
    lo_l, hi_l = A - theta1, A - theta2
    for m in range(1, M + 1):
        roots = finder.roots(m)
        if not roots:
            continue
        a = ceil(lo_l * m)
        b = floor(hi_l * m)
        if a < 0:
            a = 0
        if a > b:
            continue
        m2 = m * m
        for r in roots:
            l = a + ((r - a) % m)
            while l <= b:
                x = A - Fraction(l, m)
                if m2 * G(x) <= X:
                    count += 1
                l += m
    return count


def is_split(fam) -> bool:
    """C3 X^2 + D splits over Q exactly when C3 and -D are squares."""
    return isqrt(fam.C3) ** 2 == fam.C3 and fam.D < 0 and isqrt(-fam.D) ** 2 == -fam.D
