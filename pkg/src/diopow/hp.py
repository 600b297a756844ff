"""High-precision real numbers with explicit significant-digit tracking.

Thin wrapper over mpmath. Every value carries the number of significant
decimal digits it is good for; binary operations propagate the smaller
of the two operand precisions. Work near the precision edge is done with
guard digits so the retained digits are trustworthy.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mp

DEFAULT_DIGITS = 50
GUARD_DIGITS = 15

Number = Union[int, float, Fraction, str, "HPReal"]


class HPReal:
    """A real number plus a count of trusted significant decimal digits."""

    __slots__ = ("value", "digits")

    def __init__(self, value: Number, digits: int = DEFAULT_DIGITS):
        if digits < 1:
            raise ValueError(f"digits must be positive, got {digits}")
        if isinstance(value, HPReal):
            self.value = value.value
            self.digits = min(digits, value.digits)
            return
        with mp.workdps(digits + GUARD_DIGITS):
            if isinstance(value, Fraction):
                v = mpmath.mpf(value.numerator) / value.denominator
            elif isinstance(value, str):
                v = mpmath.mpf(value)
            else:
                # ints and binary floats are taken as exact inputs
                v = mpmath.mpf(value)
        self.value = v
        self.digits = digits

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other: Number) -> "HPReal":
        if isinstance(other, HPReal):
            return other
        return HPReal(other, self.digits)

    def _binop(self, other: Number, fn) -> "HPReal":
        o = self._coerce(other)
        d = min(self.digits, o.digits)
        with mp.workdps(d + GUARD_DIGITS):
            v = fn(self.value, o.value)
        out = object.__new__(HPReal)
        out.value = v
        out.digits = d
        return out

    def __add__(self, other: Number) -> "HPReal":
        return self._binop(other, lambda a, b: a + b)

    def __radd__(self, other: Number) -> "HPReal":
        return self._coerce(other).__add__(self)

    def __sub__(self, other: Number) -> "HPReal":
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other: Number) -> "HPReal":
        return self._coerce(other).__sub__(self)

    def __mul__(self, other: Number) -> "HPReal":
        return self._binop(other, lambda a, b: a * b)

    def __rmul__(self, other: Number) -> "HPReal":
        return self._coerce(other).__mul__(self)

    def __truediv__(self, other: Number) -> "HPReal":
        return self._binop(other, lambda a, b: a / b)

    def __rtruediv__(self, other: Number) -> "HPReal":
        return self._coerce(other).__truediv__(self)

    def __pow__(self, other: Number) -> "HPReal":
        return self._binop(other, lambda a, b: a ** b)

    def __neg__(self) -> "HPReal":
        out = object.__new__(HPReal)
        out.value = -self.value
        out.digits = self.digits
        return out

    def __abs__(self) -> "HPReal":
        out = object.__new__(HPReal)
        out.value = abs(self.value)
        out.digits = self.digits
        return out

    # -- comparisons (on the carried values) ---------------------------

    def _cmp_value(self, other: Number):
        if isinstance(other, HPReal):
            return other.value
        if isinstance(other, Fraction):
            return mpmath.mpf(other.numerator) / other.denominator
        return mpmath.mpf(other)

    def __lt__(self, other: Number) -> bool:
        return self.value < self._cmp_value(other)

    def __le__(self, other: Number) -> bool:
        return self.value <= self._cmp_value(other)

    def __gt__(self, other: Number) -> bool:
        return self.value > self._cmp_value(other)

    def __ge__(self, other: Number) -> bool:
        return self.value >= self._cmp_value(other)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (HPReal, int, float, Fraction)):
            return self.value == self._cmp_value(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    # -- rendering -----------------------------------------------------

    def __float__(self) -> float:
        return float(self.value)

    def render(self, digits: int | None = None) -> str:
        """Decimal string showing the trusted digits (or fewer on request)."""
        d = self.digits if digits is None else min(digits, self.digits)
        return mpmath.nstr(self.value, d, strip_zeros=False)

    def __repr__(self) -> str:
        return f"HPReal({mpmath.nstr(self.value, min(self.digits, 20))}, digits={self.digits})"

    def agrees(self, other: Number, digits: int) -> bool:
        """True when self and other match to `digits` significant figures."""
        with mp.workdps(max(self.digits, digits) + GUARD_DIGITS):
            o = self._cmp_value(other)
            if self.value == o:
                return True
            scale = max(abs(self.value), abs(o))
            return abs(self.value - o) <= scale * mpmath.mpf(10) ** (1 - digits) / 2


# -- function helpers (guarded evaluation, precision carried through) --


def _unary(x: HPReal, fn) -> HPReal:
    with mp.workdps(x.digits + GUARD_DIGITS):
        v = fn(x.value)
    out = object.__new__(HPReal)
    out.value = v
    out.digits = x.digits
    return out


def hp(value: Number, digits: int = DEFAULT_DIGITS) -> HPReal:
    return value if isinstance(value, HPReal) and value.digits == digits else HPReal(value, digits)


def hp_sqrt(x: Number, digits: int = DEFAULT_DIGITS) -> HPReal:
    return _unary(hp(x, digits), mpmath.sqrt)


def hp_log(x: Number, digits: int = DEFAULT_DIGITS) -> HPReal:
    return _unary(hp(x, digits), mpmath.log)


def hp_exp(x: Number, digits: int = DEFAULT_DIGITS) -> HPReal:
    return _unary(hp(x, digits), mpmath.exp)


def hp_pi(digits: int = DEFAULT_DIGITS) -> HPReal:
    with mp.workdps(digits + GUARD_DIGITS):
        v = +mpmath.pi
    out = object.__new__(HPReal)
    out.value = v
    out.digits = digits
    return out


def hp_log2(digits: int = DEFAULT_DIGITS) -> HPReal:
    return hp_log(2, digits)


def hp_euler_gamma(digits: int = DEFAULT_DIGITS) -> HPReal:
    with mp.workdps(digits + GUARD_DIGITS):
        v = +mpmath.euler
    out = object.__new__(HPReal)
    out.value = v
    out.digits = digits
    return out


def ceil_guarded(x: HPReal, tol: str = "1e-20") -> tuple[int, bool]:
    """Ceiling of x, flagging arguments suspiciously close to an integer.

    Returns (ceil(x), near_integer). The flag means the ceiling cannot be
    trusted at the stated tolerance; the value is still the literal ceiling
    of the carried approximation.
    """
    with mp.workdps(x.digits + GUARD_DIGITS):
        t = mpmath.mpf(tol)
        fl = mpmath.floor(x.value)
        frac = x.value - fl
        near = bool(frac < t or (1 - frac) < t)
        c = int(fl) if frac == 0 else int(fl) + 1
    return c, near


_SURD_RE = re.compile(
    r"""^\s*(?P<sign>[+-])?\s*
        (?:(?P<num>\d+)\s*/\s*(?P<den>\d+)
          |(?P<dec>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))?
        \s*\*?\s*
        (?:sqrt\(\s*(?P<rad>\d+)\s*\))?\s*$""",
    re.VERBOSE,
)


def parse_surd(text: str, digits: int = DEFAULT_DIGITS) -> HPReal:
    """Parse coefficient inputs of the form c, sqrt(d), or c*sqrt(d).

    c may be an integer, a/b, or a decimal (exponent allowed); d is a
    nonnegative integer. Examples: "-sqrt(5)", "2*sqrt(3)", "1/2*sqrt(2)",
    "3.5", "1e-20".
    """
    m = _SURD_RE.match(text)
    if not m or (m.group("num") is None and m.group("dec") is None and m.group("rad") is None):
        raise ValueError(f"cannot parse coefficient {text!r}")
    with mp.workdps(digits + GUARD_DIGITS):
        if m.group("num") is not None:
            if int(m.group("den")) == 0:
                raise ValueError(f"zero denominator in {text!r}")
            coef = mpmath.mpf(int(m.group("num"))) / int(m.group("den"))
        elif m.group("dec") is not None:
            coef = mpmath.mpf(m.group("dec"))
        else:
            coef = mpmath.mpf(1)
        if m.group("rad") is not None:
            coef = coef * mpmath.sqrt(mpmath.mpf(int(m.group("rad"))))
        if m.group("sign") == "-":
            coef = -coef
    out = object.__new__(HPReal)
    out.value = coef
    out.digits = digits
    return out
