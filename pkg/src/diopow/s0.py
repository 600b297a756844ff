"""Sufficient-count calculator for the three-term form plus powers of two.

Given coefficients lambda_1 (linear prime term), lambda_2, lambda_3
(prime-square terms) with rational ratios lambda_i/mu_i = a_i/q_i, a shift,
and a target width eta, computes the number s0 of powers of two that make
the inequality solvable, under both the sharper estimate implemented here
and the earlier comparison estimate.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import mpmath
from mpmath import mp

from .constants import LIWANG_BASE_LITERAL, NU_LITERAL, capital_C, capital_C1_liwang
from .hp import DEFAULT_DIGITS, GUARD_DIGITS, HPReal, ceil_guarded, parse_surd


class SystemValidationError(ValueError):
    pass


@dataclass
class CoefficientSystem:
    """Coefficients of the inequality, prior to canonicalization.

    lambdas: the three leading coefficients (nonzero, not all one sign).
    ratios: a_i/q_i = lambda_i / mu_i for the first three power-of-two
        coefficients; mu_i is derived as lambda_i * q_i / a_i.
    extra_mus: further power-of-two coefficients beyond the third.
    varpi: additive shift. eta: target width. eps: slack parameter.
    """

    lambdas: tuple[HPReal, HPReal, HPReal]
    ratios: tuple[Fraction, Fraction, Fraction]
    extra_mus: tuple[HPReal, ...] = ()
    varpi: HPReal = field(default_factory=lambda: HPReal(0))
    eta: HPReal = field(default_factory=lambda: HPReal(1))
    eps: HPReal = field(default_factory=lambda: HPReal("1e-20"))
    digits: int = DEFAULT_DIGITS

    @property
    def qs(self) -> tuple[int, int, int]:
        return tuple(r.denominator for r in self.ratios)

    def mus(self, s: int | None = None) -> list[HPReal]:
        """First s power-of-two coefficients (all of them when s is None)."""
        derived = [self.lambdas[i] / HPReal(self.ratios[i], self.digits) for i in range(3)]
        full = derived + list(self.extra_mus)
        if s is None:
            return full
        if s > len(full):
            raise SystemValidationError(
                f"s={s} requested but only {len(full)} power-of-two coefficients are defined")
        return full[:s]

    def mu_abs_sum(self, s: int | None = None) -> HPReal:
        total = HPReal(0, self.digits)
        for m in self.mus(s):
            total = total + abs(m)
        return total


def system_from_strings(l1: str, l2: str, l3: str, r1: str, r2: str, r3: str,
                        extra_mus: tuple[str, ...] = (), varpi: str = "0",
                        eta: str = "1", eps: str = "1e-20",
                        digits: int = DEFAULT_DIGITS) -> CoefficientSystem:
    """Build a system from text coefficients (c, sqrt(d), c*sqrt(d) forms)."""
    return CoefficientSystem(
        lambdas=(parse_surd(l1, digits), parse_surd(l2, digits), parse_surd(l3, digits)),
        ratios=(Fraction(r1), Fraction(r2), Fraction(r3)),
        extra_mus=tuple(parse_surd(m, digits) for m in extra_mus),
        varpi=parse_surd(varpi, digits),
        eta=parse_surd(eta, digits),
        eps=parse_surd(eps, digits),
        digits=digits,
    )


def validate_system(sys: CoefficientSystem) -> tuple[CoefficientSystem, list[str]]:
    """Check and canonicalize a system.

    Canonical form has lambda_1 < 0; when exactly one square coefficient is
    negative it sits in slot 2. Sign flips negate every coefficient at once
    (the inequality only sees absolute size), slot swaps exchange the two
    square terms together with their ratios. Returns the canonical system
    and a list of warnings.
    """
    warnings: list[str] = []
    l1, l2, l3 = sys.lambdas
    if any(v.value == 0 for v in sys.lambdas):
        raise SystemValidationError("all three leading coefficients must be nonzero")
    signs = [1 if v.value > 0 else -1 for v in sys.lambdas]
    if signs[0] == signs[1] == signs[2]:
        raise SystemValidationError("leading coefficients must not all share one sign")
    for i, r in enumerate(sys.ratios):
        if r == 0:
            raise SystemValidationError(f"ratio {i + 1} must be nonzero")
    if not (sys.eta.value > 0):
        raise SystemValidationError("eta must be positive")
    if not (0 < sys.eps.value < mpmath.mpf("0.17")):
        raise SystemValidationError("eps must lie strictly between 0 and 0.17")

    out = sys
    if out.lambdas[0].value > 0:
        out = replace(
            out,
            lambdas=tuple(-v for v in out.lambdas),
            extra_mus=tuple(-m for m in out.extra_mus),
            varpi=-out.varpi,
        )
    if out.lambdas[1].value < 0 and out.lambdas[2].value > 0:
        pass  # already canonical two-negative layout
    elif out.lambdas[1].value > 0 and out.lambdas[2].value < 0:
        l = out.lambdas
        r = out.ratios
        out = replace(out, lambdas=(l[0], l[2], l[1]), ratios=(r[0], r[2], r[1]))

    eta_cap = min(abs(out.lambdas[i].value) / abs(out.ratios[i].numerator)
                  for i in range(3))
    if out.eta.value >= eta_cap:
        warnings.append(
            f"eta={mpmath.nstr(out.eta.value, 8)} is not below the well-posedness cap "
            f"{mpmath.nstr(eta_cap, 8)}; results follow the formulas regardless")
    if out.lambdas[1].value < 0:
        warnings.append("two negative square coefficients; the mirrored case of the "
                        "main estimate applies")
    return out, warnings


@dataclass
class S0Report:
    system: CoefficientSystem
    warnings: list[str]
    digits: int
    capital_C_value: HPReal
    sum_abs_lambda: HPReal
    ceiling_argument: HPReal
    ceiling_near_integer: bool
    s0: int
    c1: HPReal
    c2_at_s0: HPReal
    c2_before: HPReal
    condition_met: bool       # c2(s0) < c1 * eta
    s0_is_minimal: bool       # c2(s0 - 1) >= c1 * eta
    liwang_C1: HPReal
    liwang_argument: HPReal
    liwang_near_integer: bool
    s0_liwang: int
    gain: HPReal


def gain_ratio(digits: int = DEFAULT_DIGITS) -> HPReal:
    """1 - log(base_old)/log(base_new): fraction of powers of two saved
    per step by the sharper shrink factor."""
    with mp.workdps(digits + GUARD_DIGITS):
        v = 1 - mpmath.log(mpmath.mpf(LIWANG_BASE_LITERAL)) / mpmath.log(mpmath.mpf(NU_LITERAL))
    out = HPReal(0, digits)
    out.value = v
    return out


def _wrap(v, digits: int) -> HPReal:
    out = HPReal(0, digits)
    out.value = v
    return out


def compute_s0(sys: CoefficientSystem) -> S0Report:
    """Evaluate both sufficient-count formulas for a validated system."""
    canon, warnings = validate_system(sys)
    digits = canon.digits
    q1, q2, q3 = canon.qs
    capC = capital_C(q1, q2, q3, canon.eps, digits)

    with mp.workdps(digits + GUARD_DIGITS):
        sum_abs = sum(abs(v.value) for v in canon.lambdas)
        eps = canon.eps.value
        eta = canon.eta.value
        margin = 3 - 2 * mpmath.sqrt(2) - eps
        num = mpmath.log(4 * capC.value * sum_abs) - mpmath.log(margin * eta)
        den = -mpmath.log(mpmath.mpf(NU_LITERAL))
        arg = num / den
    arg_hp = _wrap(arg, digits)
    ceil_arg, near = ceil_guarded(arg_hp)
    s0 = 3 + ceil_arg

    with mp.workdps(digits + GUARD_DIGITS):
        nu = mpmath.mpf(NU_LITERAL)
        c1 = margin / (4 * sum_abs)
        c2_now = nu ** (s0 - 3) * capC.value
        c2_prev = nu ** (s0 - 4) * capC.value
        cond = bool(c2_now < c1 * eta)
        minimal = bool(c2_prev >= c1 * eta)

    capC1 = capital_C1_liwang(q1, q2, q3, canon.eps, digits)
    with mp.workdps(digits + GUARD_DIGITS):
        num_lw = mpmath.log(2**9 * capC1.value * sum_abs**2) \
            - mpmath.log((1 - eps) * abs(canon.lambdas[0].value) * eta)
        den_lw = -mpmath.log(mpmath.mpf(LIWANG_BASE_LITERAL))
        arg_lw = num_lw / den_lw
    arg_lw_hp = _wrap(arg_lw, digits)
    ceil_lw, near_lw = ceil_guarded(arg_lw_hp)
    s0_lw = 3 + ceil_lw

    return S0Report(
        system=canon,
        warnings=warnings,
        digits=digits,
        capital_C_value=capC,
        sum_abs_lambda=_wrap(sum_abs, digits),
        ceiling_argument=arg_hp,
        ceiling_near_integer=near,
        s0=s0,
        c1=_wrap(c1, digits),
        c2_at_s0=_wrap(c2_now, digits),
        c2_before=_wrap(c2_prev, digits),
        condition_met=cond,
        s0_is_minimal=minimal,
        liwang_C1=capC1,
        liwang_argument=arg_lw_hp,
        liwang_near_integer=near_lw,
        s0_liwang=s0_lw,
        gain=gain_ratio(digits),
    )


def compute_s0_liwang(sys: CoefficientSystem) -> int:
    return compute_s0(sys).s0_liwang
