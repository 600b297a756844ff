"""Release gate: one function per acceptance criterion, each returning
pass/fail plus a short detail string, with wall-clock budgets enforced.

Criteria run at their stated parameters; quick mode substitutes lighter
parameters for the two heaviest checks and is meant for dev loops, not
for the release gate.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

from . import circle, search
from .arith import factorize_spf, spf_table
from .constants import (C5_UPPER_LITERAL, c5_partial_sum, constant_D, constant_D1)
from .hp import hp, hp_log
from .s0 import compute_s0, gain_ratio, system_from_strings, validate_system
from .series import (C0_MIDPOINT, bound_rosser_schoenfeld, c0_partial,
                     sigma_double_prime, sigma_minus, sigma_prime)
from .sums import (SumContext, markov_bound, measure_exceed, moment_count_Nk,
                   moment_quadrature)

NU_TEXT = "0.8844472132"


@dataclass(frozen=True)
class CriterionResult:
    index: int
    name: str
    passed: bool
    seconds: float
    budget: float
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status}  criterion {self.index:>2}  {self.name:<26} "
                f"{self.seconds:8.2f}s / {self.budget:.0f}s  {self.detail}")


def _surd_system(eta: str = "1", eps: str = "1e-20"):
    return system_from_strings("-sqrt(5)", "sqrt(3)", "sqrt(2)", "5", "3", "2",
                               eta=eta, eps=eps)


def _rational_system(eta: str = "4"):
    return system_from_strings("-1", "1", "1", "1", "1", "1", eta=eta)


def criterion_1(quick: bool) -> tuple[bool, str]:
    rep = compute_s0(_surd_system())
    ok = rep.s0 == 120 and rep.s0_liwang == 4120
    return ok, f"s0={rep.s0} comparison={rep.s0_liwang}"


def criterion_2(quick: bool) -> tuple[bool, str]:
    g = float(gain_ratio())
    return 0.9590 <= g <= 0.9595, f"gain={g:.6f}"


def criterion_3(quick: bool) -> tuple[bool, str]:
    d = constant_D()
    d1 = constant_D1()
    ratio = float(d.value / d1.value)
    ok = ratio < 0.0112
    prefixes = [10, 100, 1000, 10 ** 4, 10 ** 5]
    vals = [c5_partial_sum(p) for p in prefixes]
    mono = all(float(b - a) >= 0.0 for a, b in zip(vals, vals[1:]))
    below = vals[-1] < hp(C5_UPPER_LITERAL)
    ok = ok and mono and below
    limit = 10 ** 7 if quick else 10 ** 8
    c0 = c0_partial(limit)
    dev = abs(c0 - hp(C0_MIDPOINT))
    ok = ok and dev < hp("1e-7")
    return ok, (f"D/D1={ratio:.6f} c5({prefixes[-1]})={float(vals[-1]):.9f} "
                f"c0({limit:.0e}) dev={float(dev):.2e}")


def criterion_4(quick: bool) -> tuple[bool, str]:
    hi = 10 ** 4
    ok = True
    worst = None
    two = hp(2)
    for n in range(14, hi + 1):
        if not (bound_rosser_schoenfeld(n) < two * hp_log(hp(2 * n))):
            ok = False
            worst = n
            break
    at13 = bound_rosser_schoenfeld(13) >= two * hp_log(hp(26))
    ok = ok and at13

    top = 10 ** 4 if quick else 10 ** 5
    spf = spf_table(top + 1)
    egamma = 0.5772156649015328606
    for n in range(31, top + 1):
        fac = factorize_spf(n, spf)
        sv = float(sigma_double_prime(n, fac).exact)
        bound = math.exp(egamma) * math.log(math.log(n))
        if not (sv < bound):
            ok = False
            worst = n
            break
    c0_up = Fraction(66016181585, 10 ** 11)
    for n in range(3, top + 1):
        fac = factorize_spf(n, spf)
        phi = 1
        for p, e in fac:
            phi *= (p - 1) * p ** (e - 1)
        if sigma_prime(n, fac).exact * phi * c0_up > n:
            ok = False
            worst = n
            break
    for n in range(24, hi + 1, 24):
        fac = factorize_spf(n, spf)
        if sigma_minus(n, fac).exact > 2 * sigma_double_prime(n, fac).exact:
            ok = False
            worst = n
            break
    return ok, f"sweeps to {top} clean" if ok else f"first failure near n={worst}"


def criterion_5(quick: bool) -> tuple[bool, str]:
    for L in range(1, 15):
        if not (search.diagonal_powers_count(L) == 2 * L * L - L == moment_count_Nk(2, L)):
            return False, f"diagonal mismatch at L={L}"
    worst = 0.0
    for L in range(1, 11):
        exact = moment_count_Nk(2, L)
        quad = moment_quadrature(2, L)
        rel = abs(quad - exact) / exact
        worst = max(worst, rel)
        if rel > 1e-4:
            return False, f"fourth-moment quadrature off by {rel:.2e} at L={L}"
    return True, f"L<=14 exact, quadrature rel err <= {worst:.2e}"


def criterion_6(quick: bool) -> tuple[bool, str]:
    A = 1000.0
    spec = circle.QuadratureSpec(truncation=A, order=16, panels_per_unit=4.0)
    worst = 0.0
    for t in (0.0, 0.5, -0.5, 1.5, -1.5):
        res = circle.kernel_transform(t, 1.0, spec)
        tent = max(0.0, 1.0 - abs(t))
        dev = abs(res.value - tent)
        allowed = 2.0 / (math.pi ** 2 * A) + res.panel_error
        worst = max(worst, dev)
        if dev > allowed:
            return False, f"t={t}: dev {dev:.2e} > allowed {allowed:.2e}"
    return True, f"worst dev {worst:.2e} within 2/(pi^2 A)+panel"


def criterion_7(quick: bool) -> tuple[bool, str]:
    system, _ = validate_system(_rational_system())
    X, eps, s = 400.0, 0.04, 1
    ctx = SumContext.build(X, eps, float(system.mu_abs_sum(s)))
    rep = search.count_solutions(system, X, s, eps=eps, L=ctx.L)
    A = 200.0 if quick else 1000.0
    spec = circle.default_spec(system, ctx, s, truncation=A)
    res = circle.master_integral(system, ctx, s, spec)
    dev = abs(res.value - rep.weighted_sum)
    ok = dev <= res.declared_error
    return ok, (f"quad={res.value:.6f} enum={rep.weighted_sum:.6f} "
                f"dev={dev:.2e} declared={res.declared_error:.2f}")


def criterion_8(quick: bool) -> tuple[bool, str]:
    eps = 0.1
    systems = [validate_system(_rational_system(eta="0.1"))[0],
               validate_system(_surd_system(eta="0.1"))[0]]
    worst_margin = math.inf
    for system in systems:
        for X in (1e3, 1e4):
            lb = circle.script_J_lower_bound(system, X)
            for u in (0.0, eps * X / 2.0, -eps * X / 2.0):
                val = circle.script_J(u, system, X, eps).value
                worst_margin = min(worst_margin, val / lb)
                if val < lb:
                    return False, f"J({u})={val:.4f} < bound {lb:.4f} at X={X}"
    return True, f"min value/bound ratio {worst_margin:.2f}"


def criterion_9(quick: bool) -> tuple[bool, str]:
    cases = [
        (system_from_strings("-sqrt(5)", "sqrt(3)", "sqrt(2)", "5", "3", "2", eta="1"), 1500.0, 1),
        (system_from_strings("-1", "1", "1", "1", "1", "1", eta="2.5"), 2000.0, 2),
        (system_from_strings("-sqrt(2)", "1", "sqrt(3)", "2", "1", "3", eta="0.8"), 1200.0, 2),
        (system_from_strings("-1.5", "sqrt(2)", "1", "3", "2", "1", eta="1.2"), 900.0, 1),
        (system_from_strings("2", "-sqrt(7)", "sqrt(5)", "2", "7", "5", eta="1.5"), 1800.0, 1),
    ]
    counts = []
    for system, X, s in cases:
        pruned = search.count_solutions(system, X, s)
        naive = search.count_solutions_naive(system, X, s)
        if pruned.count != naive.count:
            return False, f"count mismatch {pruned.count} vs {naive.count} at X={X}"
        for a, b in zip(pruned.records, naive.records):
            same = (a.p1, a.p2, a.p3, a.m) == (b.p1, b.p2, b.p3, b.m) and a.weight == b.weight
            if not (same and a.form_value.agrees(b.form_value, 30)):
                return False, f"record mismatch at X={X}: {a} vs {b}"
        counts.append(pruned.count)
    if search.r_count(24, 100) != 12:
        return False, "r_count(24, 100) != 12"
    if search.rieger_count(100) != 0:
        return False, "rieger_count(100) != 0"
    return True, f"5 systems agree, counts {counts}; r=12, rieger=0"


def criterion_10(quick: bool) -> tuple[bool, str]:
    nu = float(NU_TEXT)
    Ls = (8, 10, 12) if quick else (8, 10, 12, 14, 16)
    vals = []
    for L in Ls:
        est = measure_exceed(nu, L, markov_k=2)
        if est.measure > markov_bound(nu, L, 2):
            return False, f"measure at L={L} above the moment bound"
        vals.append(est.measure)
    if not all(b < a for a, b in zip(vals, vals[1:])):
        return False, f"not strictly decreasing: {vals}"
    return True, "measures " + " > ".join(f"{v:.2e}" for v in vals)


def criterion_11(quick: bool) -> tuple[bool, str]:
    return True, ("excluded by design: infinitude claim, s=120 end-to-end chain, "
                  "50-digit nu certification, zeta-zero bounds (see README non-goals)")


_CRITERIA: list[tuple[str, float]] = [
    ("s0-reproduction", 1.0),
    ("gain-window", 1.0),
    ("constants", 300.0),
    ("series-crossovers", 60.0),
    ("exact-counts", 120.0),
    ("kernel-identity", 60.0),
    ("master-identity", 600.0),
    ("main-term-lower-bound", 300.0),
    ("search-correctness", 120.0),
    ("measure-decay", 600.0),
    ("documented-exclusions", 1.0),
]

_FUNCS = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
          criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
          criterion_11]


def run_criterion(index: int, quick: bool = False) -> CriterionResult:
    """index is 1-based, matching the published criterion numbers."""
    name, budget = _CRITERIA[index - 1]
    start = time.perf_counter()
    try:
        passed, detail = _FUNCS[index - 1](quick)
    except Exception as exc:  # a crash is a failure, not an abort
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if passed and elapsed >= budget:
        passed = False
        detail += f" (over budget: {elapsed:.1f}s)"
    return CriterionResult(index=index, name=name, passed=passed,
                           seconds=elapsed, budget=budget, detail=detail)


def run_all(quick: bool = False, indices: list[int] | None = None) -> list[CriterionResult]:
    if indices is None:
        indices = list(range(1, len(_CRITERIA) + 1))
    return [run_criterion(i, quick) for i in indices]
