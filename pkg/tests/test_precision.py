import random
from decimal import Decimal, localcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geoangles.angles import Angle
from geoangles.errors import DomainError, PoleError
from geoangles.precision import (
    HPReal,
    PrecisionConfig,
    hp_cos,
    hp_cot,
    hp_log10,
    hp_pi,
    hp_pow10,
    hp_radians,
    hp_sec,
    hp_sin,
    hp_tan,
    round_down,
    round_half_up,
)
from oracles import PI_100, sin_cos_taylor, sqrt_ratio

angles = st.fractions(min_value=-720, max_value=720, max_denominator=10**5).map(Angle)


def close(x: HPReal, expected: Decimal, digits: int, ulps: int = 10) -> bool:
    """|x - expected| within ``ulps`` units of 10**-digits (absolute)."""
    return abs(x.to_decimal() - expected) <= Decimal(ulps).scaleb(-digits)


class TestConfig:
    def test_defaults(self):
        cfg = PrecisionConfig()
        assert cfg.working_digits == 40
        assert cfg.guard_digits == 5
        assert PrecisionConfig(120).guard_digits == 12

    @pytest.mark.parametrize("digits", [0, 5, 9])
    def test_floor(self, digits):
        with pytest.raises(DomainError):
            PrecisionConfig(digits)

    def test_guard_floor(self):
        with pytest.raises(DomainError):
            PrecisionConfig(20, guard_digits=2)


class TestHPReal:
    def test_fraction_input_rounds_once(self):
        third = HPReal(Fraction(1, 3), 20)
        assert str(third.rounded()) == "0." + "3" * 20

    def test_rejects_float(self):
        with pytest.raises(TypeError):
            HPReal(0.1, 20)

    def test_division_by_zero(self):
        with pytest.raises(DomainError):
            HPReal(1, 20) / 0

    def test_zero_has_no_sign(self):
        z = -HPReal(0, 20)
        assert z.is_zero() and z.sign() == 0
        assert str(z.to_decimal()) == "0"
        assert (HPReal(1, 20) - 1).to_decimal().is_signed() is False

    def test_mixed_precision_takes_the_larger(self):
        a = HPReal(Fraction(1, 3), 20) + HPReal(Fraction(1, 3), 60)
        assert a.precision == 60

    def test_exact_comparison_with_fraction(self):
        x = HPReal(Decimal("0.5"), 20)
        assert x == Fraction(1, 2)
        assert x < Fraction(2, 3)

    def test_immutable(self):
        with pytest.raises(AttributeError):
            HPReal(1, 20).foo = 2

    @given(st.integers(-10**30, 10**30), st.integers(-10**30, 10**30))
    def test_integer_arithmetic_is_exact(self, a, b):
        x, y = HPReal(a, 70), HPReal(b, 70)
        assert (x + y).to_decimal() == a + b
        assert (x * y).to_decimal() == a * b


class TestRounding:
    @pytest.mark.parametrize(
        "value, half_up, down",
        [("0.00000265", "0.0000027", "0.0000026"), ("3.14159285111", "3.1415929", "3.1415928"), ("-0.00000005", "-0.0000001", "0.0000000")],
    )
    def test_seven_places(self, value, half_up, down):
        assert round_half_up(Decimal(value), 7) == Decimal(half_up)
        assert round_down(Decimal(value), 7) == Decimal(down)


class TestPi:
    @pytest.mark.parametrize("digits", [10, 20, 40, 80])
    def test_against_published_digits(self, digits):
        # ``rounded`` keeps ``digits`` significant digits, one before the point
        assert hp_pi(digits).rounded(digits) == round_half_up(Decimal(PI_100), digits - 1)

    def test_nine_significant_digits(self):
        assert hp_pi(10).rounded(9) == Decimal("3.14159265")

    def test_radians_quarter_turn(self):
        assert hp_radians(Angle(90), 40) * 2 == hp_pi(40)


class TestExactValues:
    @pytest.mark.parametrize("P", [20, 40, 80])
    def test_special_angles(self, P):
        assert hp_sin(Angle(0), P).is_zero()
        assert hp_sin(Angle(30), P) == Fraction(1, 2)
        assert hp_cos(Angle(60), P) == Fraction(1, 2)
        assert hp_sin(Angle(90), P) == 1
        assert hp_cos(Angle(90), P).is_zero()
        assert hp_sin(Angle(45), P) == hp_cos(Angle(45), P)
        assert hp_tan(Angle(45), P) == 1
        assert hp_cot(Angle(90), P).is_zero()

    @pytest.mark.parametrize("P", [20, 40, 80])
    def test_square_roots(self, P):
        assert close(hp_sin(Angle(45), P), sqrt_ratio(2, 2, P + 2), P)
        assert close(hp_cos(Angle(30), P), sqrt_ratio(3, 2, P + 2), P)
        assert close(hp_tan(Angle(30), P), sqrt_ratio(3, 3, P + 2), P)


class TestPoles:
    @pytest.mark.parametrize("deg", [90, -90, 270, 450])
    def test_tan_sec(self, deg):
        for fn in (hp_tan, hp_sec):
            with pytest.raises(PoleError):
                fn(Angle(deg), 20)

    @pytest.mark.parametrize("deg", [0, 180, -360])
    def test_cot(self, deg):
        with pytest.raises(PoleError):
            hp_cot(Angle(deg), 20)

    def test_near_pole_is_finite(self):
        t = hp_tan(Angle(Fraction(90) - Fraction(1, 10**6)), 30)
        assert t > 10**7


class TestAgainstTaylorOracle:
    @settings(max_examples=150, deadline=None)
    @given(angles, st.sampled_from([20, 40, 60]))
    def test_sin_cos(self, a, P):
        reduced = Fraction(a.degrees) % 360
        s, c = sin_cos_taylor(reduced, P + 4)
        assert close(hp_sin(a, P), s, P)
        assert close(hp_cos(a, P), c, P)


class TestFiveFunctionsAgainstOracle:
    def test_hundred_random_angles(self):
        rng = random.Random(12)
        P = 40
        for _ in range(100):
            den = rng.randint(1, 10**4)
            deg = Fraction(rng.randint(-360 * den, 360 * den), den)
            a = Angle(deg)
            s, c = sin_cos_taylor(deg % 360, 2 * P)
            assert close(hp_sin(a, P), s, P - 1, 1)
            assert close(hp_cos(a, P), c, P - 1, 1)
            if a.is_multiple_of(90):
                continue
            # quotients of the oracle values, scaled to the size of the result
            with localcontext() as ctx:
                ctx.prec = 2 * P
                expected = {hp_tan: s / c, hp_sec: 1 / c, hp_cot: c / s}
            for fn, value in expected.items():
                assert abs(fn(a, P).to_decimal() - value) <= Decimal(1).scaleb(-P + 1) * max(1, abs(value))


class TestInvariants:
    def test_pythagorean_thousand_angles(self):
        rng = random.Random(1)
        for _ in range(1000):
            den = rng.randint(1, 10**6)
            a = Angle(rng.randint(1, 180 * den - 1), den)
            s, c = hp_sin(a, 40), hp_cos(a, 40)
            assert abs(s * s + c * c - 1) <= HPReal(Fraction(1, 10**38), 40)

    @settings(max_examples=100, deadline=None)
    @given(angles, st.sampled_from([20, 40]))
    def test_more_digits_move_last_place_by_at_most_one(self, a, P):
        base = hp_sin(a, P).rounded(P)
        finer = round_half_up(hp_sin(a, P + 10), -base.as_tuple().exponent) if base else None
        if finer is not None:
            assert abs(finer - base) <= Decimal(1).scaleb(base.as_tuple().exponent)

    @settings(max_examples=200, deadline=None)
    @given(angles)
    def test_pythagorean(self, a):
        s, c = hp_sin(a, 40), hp_cos(a, 40)
        assert abs(s * s + c * c - 1) <= HPReal(Fraction(1, 10**38), 40)

    @settings(max_examples=200, deadline=None)
    @given(angles)
    def test_reflection(self, a):
        assert hp_sin(-a, 40) == -hp_sin(a, 40)
        assert hp_cos(-a, 40) == hp_cos(a, 40)
        assert abs(hp_sin(Angle(180) - a, 40) - hp_sin(a, 40)) <= HPReal(Fraction(1, 10**39), 40)

    @settings(max_examples=100, deadline=None)
    @given(angles)
    def test_precision_monotone(self, a):
        hi = hp_sin(a, 80)
        e20 = abs(hp_sin(a, 20) - hi)
        e40 = abs(hp_sin(a, 40) - hi)
        assert e20 <= HPReal(Fraction(1, 10**19), 80)
        assert e40 <= HPReal(Fraction(1, 10**39), 80)
        assert e40 <= e20 or e20.is_zero()

    @settings(max_examples=100, deadline=None)
    @given(st.fractions(min_value=-89, max_value=89, max_denominator=1000).map(Angle))
    def test_tan_is_sin_over_cos(self, a):
        t = hp_tan(a, 40)
        assert abs(t - hp_sin(a, 40) / hp_cos(a, 40)) <= HPReal(Fraction(1, 10**37), 40)
        if a:
            assert abs(hp_cot(a, 40) * t - 1) <= HPReal(Fraction(1, 10**37), 40)


class TestLogs:
    def test_log10_of_two(self):
        assert round_half_up(hp_log10(2, 40), 7) == Decimal("0.3010300")

    def test_log_domain(self):
        with pytest.raises(DomainError):
            hp_log10(0, 20)
        with pytest.raises(DomainError):
            hp_log10(-1, 20)

    def test_round_trip(self):
        x = hp_pow10(hp_log10(hp_pi(40), 40), 40)
        assert abs(x - hp_pi(40)) <= HPReal(Fraction(1, 10**38), 40)
