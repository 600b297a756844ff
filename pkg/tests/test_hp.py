from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from diopow.hp import (
    HPReal,
    ceil_guarded,
    hp,
    hp_euler_gamma,
    hp_log,
    hp_sqrt,
    parse_surd,
)


def test_construction_and_render():
    x = HPReal("0.660161815845", 30)
    assert x.digits == 30
    assert x.render(12).startswith("0.660161815845"[:13])
    assert float(HPReal(Fraction(3, 4))) == 0.75


def test_min_precision_propagates():
    a = HPReal("1.5", 50)
    b = HPReal("2.5", 30)
    assert (a + b).digits == 30
    assert (a * b).digits == 30
    assert (a - b).digits == 30
    assert (a / b).digits == 30
    assert (-a).digits == 50


def test_arithmetic_values():
    a = HPReal(2)
    assert float(a + 1) == 3.0
    assert float(1 + a) == 3.0
    assert float(2 / a) == 1.0
    assert float(a ** Fraction(1, 2)) == pytest.approx(2**0.5, rel=1e-15)
    assert abs(HPReal(-3)) == HPReal(3)


def test_comparisons():
    assert HPReal("1.1") > HPReal("1.0")
    assert HPReal("1.0") <= HPReal(1)
    assert HPReal(2) == 2
    assert HPReal(2) == Fraction(2)


def test_agrees():
    a = HPReal("3.14159265358979", 15)
    assert a.agrees("3.14159265", 9)
    assert not a.agrees("3.1416", 9)


def test_sqrt_log_gamma():
    assert hp_sqrt(2, 40).agrees("1.4142135623730950488016887242096980785697", 39)
    assert hp_log(2, 40).agrees("0.6931471805599453094172321214581765680755", 39)
    assert hp_euler_gamma(40).agrees("0.5772156649015328606065120900824024310422", 39)


def test_ceil_guarded():
    v, near = ceil_guarded(HPReal("2.5"))
    assert (v, near) == (3, False)
    v, near = ceil_guarded(HPReal(7))
    assert v == 7 and near is True  # integers sit on the boundary
    v, near = ceil_guarded(HPReal("4.9999999999999999999999999"))
    assert v == 5 and near is True
    v, near = ceil_guarded(HPReal("-1.25"))
    assert (v, near) == (-1, False)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("-sqrt(5)", -(5**0.5)),
        ("sqrt(2)", 2**0.5),
        ("2*sqrt(3)", 2 * 3**0.5),
        ("1/2*sqrt(2)", 0.5 * 2**0.5),
        ("3.5", 3.5),
        ("-0.25", -0.25),
        ("7", 7.0),
        ("5/4", 1.25),
        ("1e-20", 1e-20),
        ("+sqrt(9)", 3.0),
    ],
)
def test_parse_surd(text, expected):
    assert float(parse_surd(text)) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("bad", ["", "sqrt()", "sqrt(-4)", "2**sqrt(3)", "x", "1/0"])
def test_parse_surd_rejects(bad):
    with pytest.raises(ValueError):
        parse_surd(bad)


@given(st.integers(min_value=-10**9, max_value=10**9), st.integers(min_value=1, max_value=10**6))
def test_hp_fraction_roundtrip(n, d):
    x = HPReal(Fraction(n, d), 40)
    assert float(x) == pytest.approx(n / d, rel=1e-12, abs=1e-12)


@given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
def test_ceil_guarded_is_ceiling(x):
    v, _ = ceil_guarded(hp(x, 30))
    assert v - 1 < x <= v
