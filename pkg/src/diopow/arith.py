"""Integer and prime primitives shared by every other module.

Deterministic throughout: sieves and sums are evaluated in fixed ascending
order, so repeated runs are bitwise identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import mpmath
import numpy as np
from mpmath import mp

from .hp import GUARD_DIGITS, HPReal, hp

Factorization = list[tuple[int, int]]


def sieve_primes(limit: int) -> np.ndarray:
    """All primes <= limit, ascending, as an int64 array."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    if limit == 2:
        return np.array([2], dtype=np.int64)
    # odds-only sieve: index i represents 2i+1
    n = (limit - 1) // 2
    comp = np.zeros(n + 1, dtype=bool)
    comp[0] = True  # 1 is not prime
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if not comp[i]:
            p = 2 * i + 1
            start = (p * p - 1) // 2
            comp[start::p] = True
    odds = 2 * np.nonzero(~comp)[0].astype(np.int64) + 1
    return np.concatenate(([np.int64(2)], odds))


def primes_in(lo: float, hi: float, primes: np.ndarray) -> np.ndarray:
    """Slice of a sorted prime array with lo <= p <= hi (inclusive ends)."""
    i = np.searchsorted(primes, lo, side="left")
    j = np.searchsorted(primes, hi, side="right")
    return primes[i:j]


def factorize(n: int) -> Factorization:
    """Prime factorization [(p, a), ...] with ascending p. factorize(1) = []."""
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    out: Factorization = []
    m = n
    for p in (2, 3):
        if m % p == 0:
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            out.append((p, a))
    # wheel over 6k +/- 1
    p = 5
    while p * p <= m:
        for q in (p, p + 2):
            if m % q == 0:
                a = 0
                while m % q == 0:
                    m //= q
                    a += 1
                out.append((q, a))
        p += 6
    if m > 1:
        out.append((m, 1))
    return out


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError(f"mobius requires n >= 1, got {n}")
    fac = factorize(n)
    if any(a > 1 for _, a in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError(f"euler_phi requires n >= 1, got {n}")
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out


def spf_table(limit: int) -> np.ndarray:
    """Smallest-prime-factor table for 0..limit (0 and 1 map to themselves)."""
    spf = np.arange(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == p:
            sl = spf[p * p :: p]
            np.minimum(sl, p, out=sl)
    return spf


def factorize_spf(n: int, spf: np.ndarray) -> Factorization:
    """Factorization via a precomputed smallest-prime-factor table."""
    out: Factorization = []
    while n > 1:
        p = int(spf[n])
        a = 0
        while n % p == 0:
            n //= p
            a += 1
        out.append((p, a))
    return out


def _carmichael_from_factorization(fac: Factorization) -> int:
    lam = 1
    for p, a in fac:
        if p == 2:
            lp = 1 if a == 1 else (2 if a == 2 else 2 ** (a - 2))
        else:
            lp = (p - 1) * p ** (a - 1)
        lam = lam * lp // math.gcd(lam, lp)
    return lam


def mult_order_2(d: int, fac: Factorization | None = None) -> int:
    """Multiplicative order of 2 modulo odd d; order of 1 is taken as 1.

    The order divides the Carmichael function of d; it is found by stripping
    prime factors from that bound, so large d stay cheap.
    """
    if d < 1 or d % 2 == 0:
        raise ValueError(f"mult_order_2 requires odd d >= 1, got {d}")
    if d == 1:
        return 1
    if fac is None:
        fac = factorize(d)
    e = _carmichael_from_factorization(fac)
    for q, _ in factorize(e):
        while e % q == 0 and pow(2, e // q, d) == 1:
            e //= q
    return e


def chebyshev_theta(x: float, primes: np.ndarray | None = None) -> float:
    """Sum of log p over primes p <= x, accumulated in ascending order."""
    if x < 2:
        return 0.0
    if primes is None:
        primes = sieve_primes(int(x))
    ps = primes_in(2, x, primes)
    return float(np.sum(np.log(ps.astype(np.float64))))


# -- continued fractions ----------------------------------------------


@dataclass(frozen=True)
class Convergent:
    """p/q approximant to a target real; q >= 1 and gcd(p, q) = 1."""

    p: int
    q: int

    def as_fraction(self) -> Fraction:
        return Fraction(self.p, self.q)


@dataclass
class CFExpansion:
    terms: list[int]
    convergents: list[Convergent]
    truncated: bool  # precision ran out before the requested term count

    def __iter__(self):
        return iter(self.convergents)


def continued_fraction(x: Union[HPReal, Fraction, int, float], n_terms: int) -> CFExpansion:
    """Regular continued fraction of x with up to n_terms partial quotients.

    Exact Euclid for rational input; for real input the loop stops early
    (truncated flag) once the fractional part falls below the precision
    noise floor, so no unreliable terms are emitted.
    """
    if n_terms < 1:
        raise ValueError(f"n_terms must be >= 1, got {n_terms}")

    terms: list[int] = []
    convs: list[Convergent] = []
    p0, q0, p1, q1 = 1, 0, 0, 1  # (p_{-1}, q_{-1}), (p_{-2}, q_{-2})
    truncated = False

    if isinstance(x, (Fraction, int)):
        num, den = (x.numerator, x.denominator) if isinstance(x, Fraction) else (x, 1)
        for _ in range(n_terms):
            a = num // den
            terms.append(a)
            p0, q0, p1, q1 = a * p0 + p1, a * q0 + q1, p0, q0
            convs.append(Convergent(p0, q0))
            num, den = den, num - a * den
            if den == 0:
                break
        return CFExpansion(terms, convs, truncated=False)

    xv = hp(x) if not isinstance(x, HPReal) else x
    digits = xv.digits
    with mp.workdps(digits + GUARD_DIGITS):
        t = mpmath.mpf(xv.value)
        floor_noise = mpmath.mpf(10) ** (-(digits - 4))
        for _ in range(n_terms):
            a = int(mpmath.floor(t))
            terms.append(a)
            p0, q0, p1, q1 = a * p0 + p1, a * q0 + q1, p0, q0
            convs.append(Convergent(p0, q0))
            frac = t - a
            if frac < floor_noise:
                truncated = len(terms) < n_terms
                break
            # error in t grows like 1/frac^2 per step; stop once the
            # accumulated blow-up could touch the retained digits
            if q0 * q0 > mpmath.mpf(10) ** (digits - 6):
                truncated = len(terms) < n_terms
                break
            t = 1 / frac
    return CFExpansion(terms, convs, truncated=truncated)
