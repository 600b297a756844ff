"""Desk-scale witness enumeration: solutions of the target inequality,
the quadratic-representation count, the equal-pair-sum count with the
product exclusion, and the power-of-two diagonal count.

Feasibility windows for the linear prime are derived in high precision
with outward rounding, so no true solution is pruned; every surviving
candidate is confirmed at full precision. The naive oracle instead tests
every tuple.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .arith import continued_fraction, primes_in, sieve_primes
from .hp import DEFAULT_DIGITS, HPReal, hp
from .s0 import CoefficientSystem, SystemValidationError, validate_system
from .sums import k_hat


@dataclass(frozen=True)
class SolutionRecord:
    p1: int
    p2: int
    p3: int
    m: tuple[int, ...]
    form_value: HPReal      # l1 p1 + l2 p2^2 + l3 p3^2 + sum mu_i 2^(m_i) + varpi
    weight: float           # log p1 * log p2 * log p3

    def sort_key(self):
        return (self.p2, self.p3, self.p1, self.m)


@dataclass(frozen=True)
class CountReport:
    X: float
    s: int
    L: int
    eta: float
    count: int
    weighted_sum: float      # sum of weight * tent(form_value)
    weighted_cap: float      # count * eta * log(X)^3 / 4; recorded, not asserted
    records: tuple[SolutionRecord, ...]
    truncated: bool
    flags: tuple[str, ...]
    x_is_convergent_denominator_square: bool
    matching_denominator: int | None


def default_power_length(X: float, eps: float, mu_abs_sum: float) -> int:
    """L = floor(log2(eps X / (2 M))) with M the total power-of-two mass."""
    ratio = eps * X / (2.0 * mu_abs_sum)
    if ratio <= 2.0:
        raise ValueError(f"eps X / (2M) = {ratio} leaves no room for powers of two")
    return int(math.floor(math.log2(ratio)))


def _prime_ranges(X: float, eps: float) -> tuple[np.ndarray, np.ndarray]:
    primes = sieve_primes(int(X) + 1)
    linear = primes_in(eps * X, X, primes)
    square = primes_in(math.sqrt(eps * X), math.sqrt(X), primes)
    return linear, square


def _power_tuples(L: int, s: int) -> list[tuple[int, ...]]:
    out = [()]
    for _ in range(s):
        out = [t + (m,) for t in out for m in range(1, L + 1)]
    return out


def _annotate_square(X: float, system: CoefficientSystem) -> tuple[bool, int | None]:
    """The asymptotic statement runs over X = q^2 with q a convergent
    denominator of the quadratic-coefficient ratio; arbitrary X is
    accepted and merely annotated."""
    if X != int(X):
        return False, None
    n = int(X)
    q = math.isqrt(n)
    if q * q != n:
        return False, None
    try:
        cf = continued_fraction(abs(system.lambdas[1] / system.lambdas[2]), 40)
    except (ValueError, ZeroDivisionError):
        return False, None
    dens = {c.q for c in cf.convergents}
    return (q in dens), (q if q in dens else None)


def _confirm(p1: int, c_hp: HPReal, l1: HPReal, eta: HPReal) -> HPReal | None:
    form = l1 * p1 + c_hp
    if abs(form) < eta:
        return form
    return None


def _enumerate_chunk(system: CoefficientSystem, X: float, s: int, eps: float, L: int,
                     p2_values: np.ndarray, linear: np.ndarray,
                     square: np.ndarray) -> list[SolutionRecord]:
    l1, l2, l3 = system.lambdas
    eta = system.eta
    digits = system.digits
    mus = system.mus(s)
    mu_pows = [[mu * (1 << m) for m in range(L + 1)] for mu in mus]
    tuples = _power_tuples(L, s)
    pow_sums = []
    for t in tuples:
        acc = system.varpi
        for i, m in enumerate(t):
            acc = acc + mu_pows[i][m]
        pow_sums.append(acc)
    log_lin = np.log(linear.astype(np.float64))
    records: list[SolutionRecord] = []
    for p2 in p2_values:
        p2 = int(p2)
        base2 = l2 * (p2 * p2)
        for p3 in square:
            p3 = int(p3)
            base = base2 + l3 * (p3 * p3)
            for t, ps_hp in zip(tuples, pow_sums):
                c_hp = base + ps_hp
                # l1 < 0 canonically: window endpoints (eta - c)/l1, (-eta - c)/l1
                w1 = float((eta - c_hp) / l1)
                w2 = float(((-eta) - c_hp) / l1)
                lo, hi = (w1, w2) if w1 <= w2 else (w2, w1)
                guard = 1e-9 * (1.0 + abs(lo) + abs(hi))
                i0 = int(np.searchsorted(linear, lo - guard, side="left"))
                i1 = int(np.searchsorted(linear, hi + guard, side="right"))
                for j in range(i0, i1):
                    p1 = int(linear[j])
                    form = _confirm(p1, c_hp, l1, eta)
                    if form is not None:
                        w = float(log_lin[j]) * math.log(p2) * math.log(p3)
                        records.append(SolutionRecord(p1, p2, p3, t, form, w))
    return records


def _chunk_worker(args) -> list[SolutionRecord]:
    return _enumerate_chunk(*args)


def count_solutions(system: CoefficientSystem, X: float, s: int, eps: float = 0.1,
                    L: int | None = None, workers: int = 1,
                    max_records: int = 100000) -> CountReport:
    """Enumerate all (p1, p2, p3, m) with the form inside the target
    window, using per-tuple feasibility windows for p1.

    Ordered tuples with multiplicity; records sorted by
    (p2, p3, p1, m). Partitioning by p2 makes the result independent of
    the worker count.
    """
    if s < 1:
        raise SystemValidationError(f"s must be >= 1, got {s}")
    canonical, _warnings = validate_system(system)
    flags: list[str] = []
    if L is None:
        L = default_power_length(X, eps, float(canonical.mu_abs_sum(s)))
    if L < 1:
        raise ValueError(f"L must be >= 1, got {L}")
    linear, square = _prime_ranges(X, eps)
    annotated, match_q = _annotate_square(X, canonical)
    if len(linear) == 0 or len(square) == 0:
        flags.append("empty-range")
        return CountReport(X=X, s=s, L=L, eta=float(canonical.eta), count=0,
                           weighted_sum=0.0, weighted_cap=0.0, records=(),
                           truncated=False, flags=tuple(flags),
                           x_is_convergent_denominator_square=annotated,
                           matching_denominator=match_q)
    if workers <= 1 or len(square) < 2:
        records = _enumerate_chunk(canonical, X, s, eps, L, square, linear, square)
    else:
        chunks = np.array_split(square, min(workers, len(square)))
        jobs = [(canonical, X, s, eps, L, ch, linear, square) for ch in chunks if len(ch)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_chunk_worker, jobs))
        records = [r for part in parts for r in part]
    records.sort(key=SolutionRecord.sort_key)
    eta_f = float(canonical.eta)
    wsum = sum(r.weight * k_hat(float(r.form_value), eta_f) for r in records)
    cap = len(records) * eta_f * math.log(X) ** 3 / 4.0
    truncated = len(records) > max_records
    if truncated:
        flags.append("record-sample-truncated")
    return CountReport(X=X, s=s, L=L, eta=eta_f, count=len(records),
                       weighted_sum=float(wsum), weighted_cap=cap,
                       records=tuple(records[:max_records]), truncated=truncated,
                       flags=tuple(flags),
                       x_is_convergent_denominator_square=annotated,
                       matching_denominator=match_q)


def count_solutions_naive(system: CoefficientSystem, X: float, s: int, eps: float = 0.1,
                          L: int | None = None) -> CountReport:
    """Oracle: test every tuple directly (float prefilter with a wide
    margin, then the same full-precision confirmation)."""
    if s < 1:
        raise SystemValidationError(f"s must be >= 1, got {s}")
    canonical, _warnings = validate_system(system)
    if L is None:
        L = default_power_length(X, eps, float(canonical.mu_abs_sum(s)))
    linear, square = _prime_ranges(X, eps)
    annotated, match_q = _annotate_square(X, canonical)
    if len(linear) == 0 or len(square) == 0:
        return CountReport(X=X, s=s, L=L, eta=float(canonical.eta), count=0,
                           weighted_sum=0.0, weighted_cap=0.0, records=(),
                           truncated=False, flags=("empty-range",),
                           x_is_convergent_denominator_square=annotated,
                           matching_denominator=match_q)
    l1, l2, l3 = canonical.lambdas
    eta = canonical.eta
    eta_f = float(eta)
    mus = canonical.mus(s)
    mu_pows = [[mu * (1 << m) for m in range(L + 1)] for mu in mus]
    tuples = _power_tuples(L, s)
    lin_f = linear.astype(np.float64)
    log_lin = np.log(lin_f)
    l1_f = float(l1)
    records: list[SolutionRecord] = []
    for p2 in square:
        p2 = int(p2)
        for p3 in square:
            p3 = int(p3)
            base_hp = l2 * (p2 * p2) + l3 * (p3 * p3)
            for t in tuples:
                c_hp = base_hp + canonical.varpi
                for i, m in enumerate(t):
                    c_hp = c_hp + mu_pows[i][m]
                c_f = float(c_hp)
                vals = l1_f * lin_f + c_f
                near = np.nonzero(np.abs(vals) < eta_f + 1e-6)[0]
                for j in near:
                    p1 = int(linear[j])
                    form = _confirm(p1, c_hp, l1, eta)
                    if form is not None:
                        w = float(log_lin[j]) * math.log(p2) * math.log(p3)
                        records.append(SolutionRecord(p1, p2, p3, t, form, w))
    records.sort(key=SolutionRecord.sort_key)
    wsum = sum(r.weight * k_hat(float(r.form_value), eta_f) for r in records)
    cap = len(records) * eta_f * math.log(X) ** 3 / 4.0
    return CountReport(X=X, s=s, L=L, eta=eta_f, count=len(records),
                       weighted_sum=float(wsum), weighted_cap=cap,
                       records=tuple(records), truncated=False, flags=(),
                       x_is_convergent_denominator_square=annotated,
                       matching_denominator=match_q)


# -- quadratic representation counts ----------------------------------


def _pair_sum_counts(X: float) -> dict[int, int]:
    """Ordered-pair counts of p^2 + q^2 over primes p, q <= sqrt(X)."""
    root = math.isqrt(int(X))
    ps = sieve_primes(root + 1)
    ps = ps[ps <= root]
    if len(ps) == 0:
        return {}
    sq = ps.astype(np.int64) ** 2
    sums = (sq[:, None] + sq[None, :]).ravel()
    vals, cnts = np.unique(sums, return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, cnts)}


def r_count(n: int, X: float) -> int:
    """Ordered quadruples with n = p1^2 + p2^2 - p3^2 - p4^2, all primes
    at most sqrt(X). Defined for any n; the sharp upper bound only
    applies when 24 divides n."""
    if abs(n) > X:
        raise ValueError(f"need |n| <= X, got n={n}, X={X}")
    cnt = _pair_sum_counts(X)
    return sum(c * cnt.get(v - n, 0) for v, c in cnt.items())


def rieger_count(X: float) -> int:
    """Ordered quadruples with p1^2 + p2^2 = p3^2 + p4^2 and
    p1 p2 != p3 p4, all primes at most sqrt(X).

    Equal sums with equal products force equal prime multisets, so the
    exclusion removes 2k(k-1) + k tuples for k primes in range.
    """
    if X < 4:
        raise ValueError(f"need X >= 4, got {X}")
    cnt = _pair_sum_counts(X)
    root = math.isqrt(int(X))
    ps = sieve_primes(root + 1)
    k = int(np.count_nonzero(ps <= root))
    total = sum(c * c for c in cnt.values())
    return total - (2 * k * (k - 1) + k)


def diagonal_powers_count(L: int) -> int:
    """Quadruples 2^a + 2^b = 2^c + 2^d with exponents in [1, L], by
    direct loop. Equals 2 L^2 - L."""
    if L < 1:
        raise ValueError(f"L must be >= 1, got {L}")
    pows = [1 << m for m in range(1, L + 1)]
    pow_set = set(pows)
    count = 0
    for a in pows:
        for b in pows:
            t = a + b
            for c in pows:
                if t - c in pow_set:
                    count += 1
    return count
