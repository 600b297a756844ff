"""Witness enumeration: the pruned solution count against a naive oracle,
quadruple representation counts, and the power-of-two diagonal."""

import math

import pytest

from diopow.arith import sieve_primes
from diopow.constants import constant_c4
from diopow.s0 import SystemValidationError, system_from_strings
from diopow.search import (count_solutions, count_solutions_naive,
                           default_power_length, diagonal_powers_count,
                           r_count, rieger_count)
from diopow.series import sigma_double_prime
from diopow.sums import moment_count_Nk


def surd_system(eta="1"):
    return system_from_strings("-sqrt(5)", "sqrt(3)", "sqrt(2)", "5", "3", "2",
                               eta=eta)


def primes_up_to(limit):
    return [int(p) for p in sieve_primes(limit + 1) if p <= limit]


class TestPowerLength:
    def test_known_value(self):
        # eps X / (2 M) = 8, so three doublings fit
        assert default_power_length(400.0, 0.04, 1.0) == 3

    def test_rejects_no_room(self):
        with pytest.raises(ValueError):
            default_power_length(400.0, 0.04, 4.0)


class TestRepresentationCount:
    def test_reference(self):
        assert r_count(24, 100) == 12

    def test_against_quadruple_loop(self):
        ps = primes_up_to(math.isqrt(400))
        for n in (0, 24, -24, 25, 48):
            oracle = sum(1 for a in ps for b in ps for c in ps for d in ps
                         if a * a + b * b - c * c - d * d == n)
            assert r_count(n, 400) == oracle

    def test_symmetric_in_sign(self):
        for n in (24, 48, 120):
            assert r_count(-n, 2000) == r_count(n, 2000)

    def test_requires_n_in_range(self):
        with pytest.raises(ValueError):
            r_count(200, 100)

    def test_within_quadruple_bound(self):
        # the envelope is astronomically loose at this scale and must
        # hold with room to spare
        c4 = float(constant_c4().value)
        X = 1e4
        for n in (24, 48, 72, 96, 120):
            bound = 2.0 * c4 * (math.pi ** 2 / 16.0) * float(sigma_double_prime(n)) \
                * X / math.log(X) ** 4
            assert r_count(n, X) <= bound * 1e-3


class TestRiegerCount:
    def test_references(self):
        assert rieger_count(100) == 0
        assert rieger_count(400) == 12
        assert rieger_count(2000) == 112

    def test_against_quadruple_loop(self):
        for X in (400, 2000):
            ps = primes_up_to(math.isqrt(X))
            oracle = sum(1 for a in ps for b in ps for c in ps for d in ps
                         if a * a + b * b == c * c + d * d and {a, b} != {c, d})
            assert rieger_count(X) == oracle

    def test_rejects_tiny(self):
        with pytest.raises(ValueError):
            rieger_count(2.0)

    def test_growth_trend(self):
        # recorded: 15.82, 41.88, 76.97 -- slow growth, well under the
        # ceiling we pin for regression purposes
        ratios = [rieger_count(X) * math.log(X) ** 3 / X for X in (1e3, 1e4, 1e5)]
        assert all(r < 100.0 for r in ratios)
        assert ratios[0] == pytest.approx(15.8217, rel=1e-3)


class TestDiagonal:
    def test_one(self):
        assert diagonal_powers_count(1) == 1

    def test_two_by_enumeration(self):
        pows = [2, 4]
        oracle = sum(1 for a in pows for b in pows for c in pows for d in pows
                     if a + b == c + d)
        assert oracle == 6
        assert diagonal_powers_count(2) == 6

    def test_closed_form_and_fourth_moment(self):
        for L in range(1, 15):
            v = diagonal_powers_count(L)
            assert v == 2 * L * L - L
            assert v == moment_count_Nk(2, L)

    def test_reference_12(self):
        assert diagonal_powers_count(12) == 276

    def test_rejects(self):
        with pytest.raises(ValueError):
            diagonal_powers_count(0)


class TestCountSolutions:
    def test_pruned_matches_naive(self):
        sys = surd_system()
        a = count_solutions(sys, 1e4, 1, eps=0.1)
        b = count_solutions_naive(sys, 1e4, 1, eps=0.1)
        assert a.count == b.count == 172
        assert [(r.p1, r.p2, r.p3, r.m) for r in a.records] \
            == [(r.p1, r.p2, r.p3, r.m) for r in b.records]
        assert [r.weight for r in a.records] == [r.weight for r in b.records]
        for ra, rb in zip(a.records, b.records):
            assert ra.form_value.agrees(rb.form_value, 30)

    def test_reference_count_1500(self):
        assert count_solutions(surd_system(), 1500.0, 1, eps=0.1).count == 37

    def test_records_sorted(self):
        rep = count_solutions(surd_system(), 1500.0, 1, eps=0.1)
        keys = [r.sort_key() for r in rep.records]
        assert keys == sorted(keys)

    def test_records_confirmed_at_high_precision(self):
        sys = surd_system()
        rep = count_solutions(sys, 1500.0, 1, eps=0.1)
        l1, l2, l3 = sys.lambdas
        mu = sys.mus(1)[0]
        eta = float(sys.eta)
        for rec in rep.records:
            form = l1 * rec.p1 + l2 * rec.p2 ** 2 + l3 * rec.p3 ** 2 \
                + mu * (2 ** rec.m[0])
            assert form.agrees(rec.form_value, 30)
            assert abs(float(rec.form_value)) < eta
            expected_w = math.log(rec.p1) * math.log(rec.p2) * math.log(rec.p3)
            assert rec.weight == pytest.approx(expected_w, rel=1e-14)

    def test_worker_count_invisible(self):
        sys = surd_system()
        assert count_solutions(sys, 1500.0, 1, eps=0.1, workers=2) \
            == count_solutions(sys, 1500.0, 1, eps=0.1, workers=1)

    def test_wide_window_counts_every_tuple(self):
        # 16 linear primes, 2 square primes, 3 exponents
        rep = count_solutions(surd_system(eta="10000"), 100.0, 1, eps=0.25, L=3)
        assert rep.count == 16 * 2 * 2 * 3

    def test_empty_range_flagged(self):
        rep = count_solutions(surd_system(), 30.0, 1, eps=0.9, L=1)
        assert rep.count == 0
        assert rep.records == ()
        assert "empty-range" in rep.flags

    def test_sample_truncation(self):
        full = count_solutions(surd_system(), 1500.0, 1, eps=0.1)
        cut = count_solutions(surd_system(), 1500.0, 1, eps=0.1, max_records=5)
        assert cut.count == full.count
        assert len(cut.records) == 5
        assert cut.truncated
        assert "record-sample-truncated" in cut.flags
        assert not full.truncated

    def test_weighted_sum_capped(self):
        for X in (400.0, 1500.0):
            rep = count_solutions(surd_system(), X, 1, eps=0.1)
            assert 0.0 <= rep.weighted_sum <= rep.weighted_cap

    def test_count_grows_with_eta(self):
        counts = [count_solutions(surd_system(eta=e), 1500.0, 1, eps=0.1).count
                  for e in ("0.5", "1", "2")]
        assert counts[0] <= counts[1] <= counts[2]

    def test_solutions_nest_as_range_widens(self):
        # eps X pinned at 100 so each widening only adds primes
        seen = []
        for X, eps in ((500.0, 0.2), (1000.0, 0.1), (2000.0, 0.05)):
            rep = count_solutions(surd_system(), X, 1, eps=eps, L=6)
            seen.append({(r.p1, r.p2, r.p3, r.m) for r in rep.records})
        assert seen[0] <= seen[1] <= seen[2]
        assert len(seen[0]) < len(seen[2])

    def test_square_denominator_annotation(self):
        sys = surd_system()
        hit = count_solutions(sys, 1600.0, 1, eps=0.1, L=3)
        assert hit.x_is_convergent_denominator_square
        assert hit.matching_denominator == 40
        miss = count_solutions(sys, 1500.0, 1, eps=0.1, L=3)
        assert not miss.x_is_convergent_denominator_square
        assert miss.matching_denominator is None

    def test_rejects_bad_s(self):
        with pytest.raises(SystemValidationError):
            count_solutions(surd_system(), 400.0, 0, eps=0.1)
        with pytest.raises(SystemValidationError):
            count_solutions(surd_system(), 400.0, 4, eps=0.1)
