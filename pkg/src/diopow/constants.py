"""Named constants of the estimate pipeline, with provenance.

Every constant is tagged paper-literal (transcribed from the published
source), computed (derived here from a closed form), or
computed-with-paper-crosscheck (derived here and checked against the
published decimal).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import mpmath
from mpmath import mp

from .arith import factorize_spf, mult_order_2, spf_table
from .hp import DEFAULT_DIGITS, GUARD_DIGITS, HPReal
from .series import sigma_double_prime, sigma_prime

# Published decimal literals.
C_LITERAL = "10.0219168340"
D_LITERAL = "17646979.6536361512"
D1_LITERAL = "1581925383.0798448770"
NU_LITERAL = "0.8844472132"
C5_UPPER_LITERAL = "1.620767"
ROSSER_LITERAL = "2.50637"
LIWANG_BASE_LITERAL = "0.995"
C4_EXACT = 101 * 2**20  # 105906176

PROVENANCES = ("paper-literal", "computed", "computed-with-paper-crosscheck")


@dataclass(frozen=True)
class NamedConstant:
    name: str
    value: HPReal
    provenance: str
    note: str = ""

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")


def constant_C(digits: int = DEFAULT_DIGITS) -> NamedConstant:
    return NamedConstant("C", HPReal(C_LITERAL, digits), "paper-literal")


def constant_c4(digits: int = DEFAULT_DIGITS) -> NamedConstant:
    return NamedConstant("c4", HPReal(C4_EXACT, digits), "computed-with-paper-crosscheck",
                         note="101 * 2^20")


def constant_nu(digits: int = DEFAULT_DIGITS) -> NamedConstant:
    return NamedConstant("nu", HPReal(NU_LITERAL, digits), "paper-literal",
                         note="shrink factor per extra power of two")


def _c5_terms(d_max: int) -> Iterator[tuple[int, Fraction]]:
    """Exact per-term values 1/(d * ord_2(d)) over odd squarefree d <= d_max."""
    spf = spf_table(d_max)
    for d in range(1, d_max + 1, 2):
        fac = factorize_spf(d, spf) if d > 1 else []
        if any(a > 1 for _, a in fac):
            continue
        yield d, Fraction(1, d * mult_order_2(d, fac))


def c5_partial_sum(d_max: int, digits: int = DEFAULT_DIGITS) -> HPReal:
    """Partial sum of 1/(d * ord_2(d)) over odd squarefree d <= d_max.

    Terms are exact rationals; accumulation runs in fixed ascending order
    at the working precision (roundoff is bounded by n ulp, far below the
    rendered digits). Strictly increasing in d_max at squarefree odd d and
    bounded above by the published 1.620767.
    """
    if d_max < 1:
        raise ValueError(f"d_max must be >= 1, got {d_max}")
    with mp.workdps(digits + GUARD_DIGITS):
        acc = mpmath.mpf(0)
        for _, t in _c5_terms(d_max):
            acc += mpmath.mpf(t.numerator) / t.denominator
    out = HPReal(0, digits)
    out.value = acc
    return out


def constant_D(digits: int = DEFAULT_DIGITS, mode: str = "paper-literal",
               d_max: int = 10**5) -> NamedConstant:
    """The large factor multiplying the square-coefficient singular series.

    mode="paper-literal" returns the published decimal (the pipeline
    default); mode="recomputed" evaluates c4 * c5_partial_sum(d_max) *
    pi^2 / 96, which lands slightly below the literal (gap recorded by the
    constants report, not resolved here).
    """
    if mode == "paper-literal":
        return NamedConstant("D", HPReal(D_LITERAL, digits), "paper-literal")
    if mode != "recomputed":
        raise ValueError(f"unknown mode {mode!r}")
    c5 = c5_partial_sum(d_max, digits)
    with mp.workdps(digits + GUARD_DIGITS):
        v = mpmath.mpf(C4_EXACT) * c5.value * mpmath.pi**2 / 96
    val = HPReal(0, digits)
    val.value = v
    return NamedConstant("D", val, "computed",
                         note=f"c4 * c5_partial_sum({d_max}) * pi^2 / 96")


def constant_D1(digits: int = DEFAULT_DIGITS) -> NamedConstant:
    """Closed form 11^4 * 43 * pi^26 / (2^27 * 25), crosschecked against
    the published decimal."""
    with mp.workdps(digits + GUARD_DIGITS):
        v = mpmath.mpf(11) ** 4 * 43 * mpmath.pi**26 / (2**27 * 25)
        lit = mpmath.mpf(D1_LITERAL)
        if abs(v - lit) > mpmath.mpf("1e-9") * lit:
            raise ArithmeticError("closed form for D1 drifted from the published decimal")
    val = HPReal(0, digits)
    val.value = v
    return NamedConstant("D1", val, "computed-with-paper-crosscheck",
                         note="11^4 * 43 * pi^26 / (2^27 * 25)")


def capital_C(q1: int, q2: int, q3: int, eps: HPReal | str | float,
              digits: int = DEFAULT_DIGITS) -> HPReal:
    """Leading coefficient of the main-term comparison:

        (1+eps) * (log2 + C*sp(q1))^(1/2)
               * (log^2 2 + D*spp(q2))^(1/4) * (log^2 2 + D*spp(q3))^(1/4)

    with sp/spp the singular-series factors and C, D the published literals.
    """
    for q in (q1, q2, q3):
        if q < 1:
            raise ValueError(f"denominators must be >= 1, got {q}")
    e = eps if isinstance(eps, HPReal) else HPReal(eps, digits)
    sp = sigma_prime(q1).exact
    s2 = sigma_double_prime(q2).exact
    s3 = sigma_double_prime(q3).exact
    with mp.workdps(digits + GUARD_DIGITS):
        l2 = mpmath.log(2)
        cc = mpmath.mpf(C_LITERAL)
        dd = mpmath.mpf(D_LITERAL)
        r = lambda f: mpmath.mpf(f.numerator) / f.denominator
        v = ((1 + e.value) * mpmath.sqrt(l2 + cc * r(sp))
             * (l2**2 + dd * r(s2)) ** mpmath.mpf("0.25")
             * (l2**2 + dd * r(s3)) ** mpmath.mpf("0.25"))
    out = HPReal(0, min(digits, e.digits))
    out.value = v
    return out


def capital_C1_liwang(q1: int, q2: int, q3: int, eps: HPReal | str | float,
                      digits: int = DEFAULT_DIGITS) -> HPReal:
    """Counterpart coefficient from the earlier bound being compared against:

        5*(1+eps) * (D1 + log^2 2)^(1/2)
                 * (log 2q1)^(1/2) * (log 2q2)^(1/4) * (log 2q3)^(1/4)
    """
    for q in (q1, q2, q3):
        if q < 1:
            raise ValueError(f"denominators must be >= 1, got {q}")
    e = eps if isinstance(eps, HPReal) else HPReal(eps, digits)
    d1 = constant_D1(digits)
    with mp.workdps(digits + GUARD_DIGITS):
        l2 = mpmath.log(2)
        v = (5 * (1 + e.value) * mpmath.sqrt(d1.value.value + l2**2)
             * mpmath.sqrt(mpmath.log(2 * q1))
             * mpmath.log(2 * q2) ** mpmath.mpf("0.25")
             * mpmath.log(2 * q3) ** mpmath.mpf("0.25"))
    out = HPReal(0, min(digits, e.digits))
    out.value = v
    return out


def constants_table(digits: int = DEFAULT_DIGITS) -> list[NamedConstant]:
    """Every named constant the reports expose, in fixed order."""
    from .series import C0_LOWER, C0_MIDPOINT, C0_UPPER

    with mp.workdps(digits + GUARD_DIGITS):
        mlnu = -mpmath.log(mpmath.mpf(NU_LITERAL))
        tms = 3 - 2 * mpmath.sqrt(2)
        gamma = +mpmath.euler
    mk = lambda v: HPReal(v, digits)
    hv = lambda m: _from_mpf(m, digits)
    return [
        constant_C(digits),
        constant_D(digits),
        constant_D1(digits),
        constant_c4(digits),
        NamedConstant("c5_upper", mk(C5_UPPER_LITERAL), "paper-literal",
                      note="upper bound for the order-weighted sum"),
        constant_nu(digits),
        NamedConstant("minus_log_nu", hv(mlnu), "computed"),
        NamedConstant("three_minus_2sqrt2", hv(tms), "computed"),
        NamedConstant("c0_lower", HPReal(C0_LOWER, digits), "paper-literal"),
        NamedConstant("c0_upper", HPReal(C0_UPPER, digits), "paper-literal"),
        NamedConstant("c0_midpoint", mk(C0_MIDPOINT), "computed",
                      note="midpoint of the published enclosure"),
        NamedConstant("euler_gamma", hv(gamma), "computed"),
        NamedConstant("rosser_coefficient", mk(ROSSER_LITERAL), "paper-literal"),
        NamedConstant("liwang_base", mk(LIWANG_BASE_LITERAL), "paper-literal"),
    ]


def _from_mpf(v, digits: int) -> HPReal:
    out = HPReal(0, digits)
    out.value = v
    return out
