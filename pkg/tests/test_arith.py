import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diopow.arith import (
    chebyshev_theta,
    continued_fraction,
    euler_phi,
    factorize,
    factorize_spf,
    mobius,
    mult_order_2,
    primes_in,
    sieve_primes,
    spf_table,
)
from diopow.hp import hp, hp_sqrt


def trial_division_primes(limit):
    """Independent oracle: per-integer trial division."""
    out = []
    for n in range(2, limit + 1):
        if all(n % d for d in range(2, math.isqrt(n) + 1)):
            out.append(n)
    return out


def test_sieve_matches_trial_division():
    assert sieve_primes(10**4).tolist() == trial_division_primes(10**4)


def test_sieve_edges():
    assert sieve_primes(1).tolist() == []
    assert sieve_primes(2).tolist() == [2]
    assert sieve_primes(3).tolist() == [2, 3]
    assert sieve_primes(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_prime_count_to_1e6():
    # frozen from the trial-division oracle recount
    assert len(sieve_primes(10**6)) == 78498


def test_primes_in_inclusive_ends():
    ps = sieve_primes(100)
    assert primes_in(5, 11, ps).tolist() == [5, 7, 11]
    assert primes_in(5.5, 10.9, ps).tolist() == [7]
    assert primes_in(98, 99, ps).tolist() == []


@pytest.mark.parametrize(
    "n,fac",
    [(1, []), (2, [(2, 1)]), (12, [(2, 2), (3, 1)]), (97, [(97, 1)]),
     (360, [(2, 3), (3, 2), (5, 1)]), (10**6 + 3, [(1000003, 1)])],
)
def test_factorize(n, fac):
    assert factorize(n) == fac


@given(st.integers(min_value=1, max_value=10**6))
def test_factorize_reconstructs(n):
    prod = 1
    for p, a in factorize(n):
        prod *= p**a
    assert prod == n


def test_factorize_spf_agrees():
    spf = spf_table(5000)
    for n in range(2, 5000):
        assert factorize_spf(n, spf) == factorize(n)


def test_mobius_known():
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_mobius_mertens():
    # Mertens function at 10^4, frozen from the definition
    assert sum(mobius(n) for n in range(1, 10**4 + 1)) == -23


def test_euler_phi_known():
    assert [euler_phi(n) for n in (1, 2, 6, 24, 97, 360)] == [1, 1, 2, 8, 96, 96]


@given(st.integers(min_value=1, max_value=3000))
def test_phi_divisor_sum(n):
    # sum of phi(d) over divisors d of n equals n
    total = sum(euler_phi(d) for d in range(1, n + 1) if n % d == 0)
    assert total == n


def brute_order_2(d):
    if d == 1:
        return 1
    t, e = 2 % d, 1
    while t != 1:
        t = (t * 2) % d
        e += 1
    return e


@pytest.mark.parametrize("d,e", [(1, 1), (3, 2), (5, 4), (7, 3), (9, 6), (341, 10)])
def test_mult_order_2_known(d, e):
    assert mult_order_2(d) == e


@settings(max_examples=200)
@given(st.integers(min_value=0, max_value=3000))
def test_mult_order_2_vs_brute(k):
    d = 2 * k + 1
    assert mult_order_2(d) == brute_order_2(d)
    assert euler_phi(d) % mult_order_2(d) == 0


def test_mult_order_2_rejects_even():
    with pytest.raises(ValueError):
        mult_order_2(6)


def test_chebyshev_theta():
    ps = sieve_primes(1000)
    assert chebyshev_theta(1, ps) == 0.0
    assert chebyshev_theta(2, ps) == pytest.approx(math.log(2), rel=1e-15)
    oracle = sum(math.log(p) for p in trial_division_primes(1000))
    assert chebyshev_theta(1000, ps) == pytest.approx(oracle, rel=1e-12)
    # inclusive right end
    assert chebyshev_theta(97, ps) - chebyshev_theta(96.5, ps) == pytest.approx(
        math.log(97), rel=1e-12)


def test_cf_sqrt2():
    cf = continued_fraction(hp_sqrt(2), 5)
    assert [(c.p, c.q) for c in cf.convergents] == [(1, 1), (3, 2), (7, 5), (17, 12), (41, 29)]
    assert cf.terms == [1, 2, 2, 2, 2]
    assert not cf.truncated


def test_cf_rational_terminates():
    cf = continued_fraction(Fraction(355, 113), 10)
    assert cf.convergents[-1].as_fraction() == Fraction(355, 113)
    assert len(cf.terms) < 10
    assert not cf.truncated


def test_cf_golden_ratio_terms():
    phi = (hp(1) + hp_sqrt(5)) / 2
    cf = continued_fraction(phi, 12)
    assert cf.terms == [1] * 12


def test_cf_approximation_quality():
    x = hp_sqrt(3, 50)
    cf = continued_fraction(x, 15)
    for c in cf.convergents:
        err = abs(float(x) - c.p / c.q)
        assert err < 1.0 / (c.q * c.q)


def test_cf_precision_exhaustion_flagged():
    x = hp("1.4142", 5)  # five digits cannot support many terms
    cf = continued_fraction(x, 30)
    assert cf.truncated
    assert len(cf.terms) < 30


def test_cf_denominators_increase():
    cf = continued_fraction(hp_sqrt(7), 12)
    qs = [c.q for c in cf.convergents]
    # q1 = q0 = 1 happens when the second partial quotient is 1; from the
    # third convergent on the recurrence forces strict growth
    assert all(a <= b for a, b in zip(qs, qs[1:]))
    assert all(a < b for a, b in zip(qs[1:], qs[2:]))
