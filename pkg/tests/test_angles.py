import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from geoangles.angles import (
    Angle,
    SexagesimalForm,
    divide,
    format_angle,
    from_sexagesimal,
    parse,
    to_sexagesimal,
)
from geoangles.errors import DomainError, ParseError

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)


class TestAngle:
    def test_construction(self):
        assert Angle(45).degrees == 45
        assert Angle(1, 3).degrees == Fraction(1, 3)
        assert Angle(Fraction(6, 4)) == Angle(3, 2)

    def test_float_rejected(self):
        with pytest.raises(TypeError):
            Angle(0.5)

    def test_arithmetic(self):
        a = Angle(30)
        assert a + Angle(15) == Angle(45)
        assert a - 45 == Angle(-15)
        assert 2 * a == Angle(60)
        assert a / 4 == Angle(15, 2)
        assert -a == Angle(-30)
        assert abs(Angle(-30)) == a

    def test_ordering(self):
        assert Angle(1, 3) < Angle(1, 2)
        assert sorted([Angle(3), Angle(-1), Angle(2)]) == [Angle(-1), Angle(2), Angle(3)]

    def test_multiples(self):
        assert Angle(270).is_odd_multiple_of(90)
        assert not Angle(180).is_odd_multiple_of(90)
        assert Angle(-360).is_multiple_of(180)
        assert not Angle(180, 7).is_multiple_of(180)

    def test_json_round_trip(self):
        a = Angle(-35, 64)
        assert a.to_json() == {"deg_num": -35, "deg_den": 64}
        assert Angle.from_json(a.to_json()) == a

    @given(rationals, st.integers(1, 10**6))
    def test_division_is_exact(self, deg, r):
        a = Angle(deg)
        assert divide(a, r) * r == a
        assert divide(a, r).degrees == deg / r

    def test_divide_by_zero(self):
        with pytest.raises(DomainError):
            divide(Angle(90), 0)

    def test_halving_chain_stays_exact(self):
        a = Angle(90)
        for _ in range(60):
            a = a / 2
        assert a.degrees == Fraction(90, 2**60)


class TestSexagesimal:
    def test_fields(self):
        f = to_sexagesimal(Angle(Fraction(90, 16)))
        assert (f.degrees, f.minutes, f.minute_fraction, f.negative) == (5, 37, Fraction(1, 2), False)

    @given(rationals)
    def test_round_trip(self, deg):
        a = Angle(deg)
        assert from_sexagesimal(to_sexagesimal(a)) == a

    @pytest.mark.parametrize("minutes, frac", [(60, 0), (-1, 0), (10, Fraction(1)), (10, Fraction(-1, 2))])
    def test_invalid_fields(self, minutes, frac):
        with pytest.raises(DomainError):
            SexagesimalForm(1, minutes, frac)


class TestFormat:
    @pytest.mark.parametrize(
        "deg, ascii_, historical",
        [
            (Fraction(90, 16), "5d37 1/2m", "5° 37 1/2′"),
            (Fraction(90), "90d", "90°"),
            (Fraction(45, 2), "22d30m", "22° 30′"),
            (Fraction(90, 256), "0d21 3/32m", "0° 21 3/32′"),
            (Fraction(-1, 3), "-0d20m", "-0° 20′"),
            (Fraction(90, 3**5), "0d22 2/9m", "0° 22 2/9′"),
        ],
    )
    def test_styles(self, deg, ascii_, historical):
        a = Angle(deg)
        assert format_angle(a) == ascii_
        assert format_angle(a, "historical") == historical

    def test_decimal_minutes(self):
        assert format_angle(Angle(Fraction(90, 16)), decimal_minutes=True) == "5d37.5m"
        assert format_angle(Angle(Fraction(90, 128)), decimal_minutes=True) == "0d42.1875m"
        # 1/3 minute does not terminate, so the vulgar fraction stays
        assert format_angle(Angle(Fraction(1, 180)), decimal_minutes=True) == "0d0 1/3m"


class TestParse:
    @pytest.mark.parametrize(
        "text, deg",
        [
            ("90d", 90),
            ("5d37 1/2m", Fraction(45, 8)),
            ("0d10 35/64m", Fraction(10 * 64 + 35, 64 * 60)),
            (" -12d 30m ", Fraction(-25, 2)),
            ("deg:90/7", Fraction(90, 7)),
            ("deg:-3", -3),
        ],
    )
    def test_valid(self, text, deg):
        assert parse(text) == Angle(deg)

    @pytest.mark.parametrize(
        "text, position",
        [
            ("12d60m", 3),
            ("12d5 3/2m", 5),
            ("12x", 2),
            ("", 0),
            ("deg:1/0", 6),
        ],
    )
    def test_errors_carry_position(self, text, position):
        with pytest.raises(ParseError) as info:
            parse(text)
        assert info.value.position == position
        assert info.value.text == text

    def test_round_trip_on_random_angles(self):
        rng = random.Random(7)
        for _ in range(1000):
            den = rng.choice([1, 2, 3, 8, 64, 60 * 7, rng.randint(1, 10**9)])
            a = Angle(rng.randint(-360 * den, 360 * den), den)
            assert parse(format_angle(a)) == a
            assert parse(f"deg:{a.numerator}/{a.denominator}") == a

    @given(rationals)
    def test_round_trip_property(self, deg):
        a = Angle(deg)
        assert parse(format_angle(a)) == a
