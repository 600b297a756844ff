"""Singular-series factors and the Mertens-type product they converge to.

All finite products are exact rationals; only rendering and the very long
product over primes are done in floating point, with guard digits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from mpmath import mp

from .arith import Factorization, factorize, sieve_primes
from .hp import DEFAULT_DIGITS, GUARD_DIGITS, HPReal, hp_euler_gamma

# Interval enclosure for the limiting product over odd primes of
# (1 - 1/(p-1)^2); the midpoint is the pinned consumer value used by the
# closed-form bounds below.
C0_LOWER = Fraction(66016181584, 10**11)
C0_UPPER = Fraction(66016181585, 10**11)
C0_MIDPOINT = "0.660161815845"


@dataclass(frozen=True)
class SingularValue:
    """Exact rational value of a finite singular-series product."""

    exact: Fraction

    def hp(self, digits: int = DEFAULT_DIGITS) -> HPReal:
        return HPReal(self.exact, digits)

    def __float__(self) -> float:
        return self.exact.numerator / self.exact.denominator


def sigma_prime(n: int, fac: Factorization | None = None) -> SingularValue:
    """Product of (p-1)/(p-2) over odd primes dividing n."""
    if n < 1:
        raise ValueError(f"sigma_prime requires n >= 1, got {n}")
    if fac is None:
        fac = factorize(n)
    out = Fraction(1)
    for p, _ in fac:
        if p > 2:
            out *= Fraction(p - 1, p - 2)
    return SingularValue(out)


def sigma_double_prime(n: int, fac: Factorization | None = None) -> SingularValue:
    """Product of (p+1)/p over odd primes dividing n; equals 1 for n in {1, 2}."""
    if n < 1:
        raise ValueError(f"sigma_double_prime requires n >= 1, got {n}")
    if fac is None:
        fac = factorize(n)
    out = Fraction(1)
    for p, _ in fac:
        if p > 2:
            out *= Fraction(p + 1, p)
    return SingularValue(out)


def sigma_minus(n: int, fac: Factorization | None = None) -> SingularValue:
    """Signed-weight singular series for multiples of 24.

    Requires n divisible by 24 so the dyadic part has exponent >= 3.
    """
    if n < 1 or n % 24 != 0:
        raise ValueError(f"sigma_minus requires n divisible by 24, got {n}")
    if fac is None:
        fac = factorize(n)
    b0 = next(a for p, a in fac if p == 2)
    out = Fraction(2) - Fraction(1, 2 ** (b0 - 1)) - Fraction(1, 2**b0)
    for p, b in fac:
        if p > 2:
            out *= Fraction(1) + Fraction(1, p) - Fraction(1, p ** (b + 1)) - Fraction(1, p ** (b + 2))
    return SingularValue(out)


def c0_partial(prime_limit: int, digits: int = DEFAULT_DIGITS,
               primes: np.ndarray | None = None) -> HPReal:
    """Truncated product of (1 - 1/(p-1)^2) over odd primes <= prime_limit.

    Certified to the requested digits: the sequential product runs in MPFR
    at the target precision plus guard bits, in fixed ascending order.
    """
    if prime_limit < 3:
        return HPReal(1, digits)
    import gmpy2

    if primes is None:
        primes = sieve_primes(prime_limit)
    ps = primes[(primes > 2) & (primes <= prime_limit)]
    bits = int((digits + 25) * 3.33) + 16
    with gmpy2.context(precision=bits):
        acc = gmpy2.mpfr(1)
        for p in ps.tolist():
            acc *= gmpy2.mpfr((p - 2) * p) / ((p - 1) * (p - 1))
        man, exp = acc.as_mantissa_exp()
    with mp.workdps(digits + GUARD_DIGITS):
        v = mpmath.mpf(int(man)) * mpmath.mpf(2) ** int(exp)
    out = HPReal(0, digits)
    out.value = v
    return out


def bound_rosser_schoenfeld(n: int, digits: int = DEFAULT_DIGITS) -> HPReal:
    """Closed-form upper bound for the totient-quotient route:

        exp(gamma) * log log n / c0  +  2.50637 / (c0 * log log n)

    using the pinned midpoint for c0. Meaningful for n >= 3.
    """
    if n < 3:
        raise ValueError(f"bound_rosser_schoenfeld requires n >= 3, got {n}")
    with mp.workdps(digits + GUARD_DIGITS):
        ll = mpmath.log(mpmath.log(n))
        c0 = mpmath.mpf(C0_MIDPOINT)
        v = mpmath.exp(mpmath.euler) * ll / c0 + mpmath.mpf("2.50637") / (c0 * ll)
    out = HPReal(0, digits)
    out.value = v
    return out


def bound_sole_planat(n: int, digits: int = DEFAULT_DIGITS) -> HPReal:
    """exp(gamma) * log log n; dominates sigma_double_prime from n >= 31 on."""
    if n < 3:
        raise ValueError(f"bound_sole_planat requires n >= 3, got {n}")
    g = hp_euler_gamma(digits)
    with mp.workdps(digits + GUARD_DIGITS):
        v = mpmath.exp(g.value) * mpmath.log(mpmath.log(n))
    out = HPReal(0, digits)
    out.value = v
    return out
