import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geoangles.angles import Angle
from geoangles.errors import NearPoleError, PoleError
from geoangles.identities import (
    IDENTITIES,
    cot_triple_chain,
    cot_triple_decomposition,
    double_angle,
    identity_tolerance,
    random_angle,
    tan_cot_relation,
    tan_triple,
    tan_triple_report,
    verify_identity,
)
from geoangles.precision import HPReal, PrecisionConfig, hp_tan

CFG = PrecisionConfig(40)


def test_tolerance():
    assert identity_tolerance(PrecisionConfig(20)) == Fraction(1, 10**17)


def test_all_eight_are_registered():
    assert sorted(IDENTITIES) == sorted(
        ["double-angle", "triple-angle-sin", "factor-43", "tan-cot", "tan-triple", "cot-triple", "sin4-product", "sin5-product"]
    )


@pytest.mark.parametrize("name", sorted(IDENTITIES))
def test_each_identity_on_samples(name):
    reports = verify_identity(name, 60, CFG, seed=3)
    assert len(reports) == 60
    assert all(r.passed for r in reports), max(abs(r.residual) for r in reports)


@pytest.mark.parametrize("name", sorted(IDENTITIES))
@settings(max_examples=25, deadline=None)
@given(deg=st.fractions(min_value=-720, max_value=720, max_denominator=3600))
def test_identities_property(name, deg):
    evaluator, excluded = IDENTITIES[name]
    phi = Angle(deg)
    if excluded(phi) or (name == "tan-cot" and phi.is_multiple_of(90)):
        with pytest.raises(PoleError):
            evaluator(phi, 30)
        return
    assert evaluator(phi, 30).passed


@pytest.mark.parametrize("name", sorted(IDENTITIES))
def test_each_identity_at_eighty_digits(name):
    reports = verify_identity(name, 1000, PrecisionConfig(80), seed=8)
    assert all(r.passed for r in reports)


def test_seeding_is_reproducible():
    a = [r.residual for r in verify_identity("double-angle", 5, 20, seed=11)]
    b = [r.residual for r in verify_identity("double-angle", 5, 20, seed=11)]
    assert a == b


def test_random_angle_range_and_exclusion():
    rng = random.Random(0)
    for _ in range(500):
        a = random_angle(rng, lambda p: p.is_multiple_of(60))
        assert 0 < a.degrees < 180 and a != Angle(60) and a != Angle(120)


class TestExactCases:
    def test_tan_cot_at_45_is_exact(self):
        report = tan_cot_relation(Angle(45), 20)
        assert report.residual.is_zero()

    def test_tan_cot_pole(self):
        with pytest.raises(PoleError):
            tan_cot_relation(Angle(90), 20)

    def test_double_angle_at_30(self):
        report = double_angle(Angle(30), CFG)
        assert report.passed and report.lhs == report.rhs

    def test_cot_triple_at_30(self):
        # cot 90 = 0 and cot 30 = tan 60, so both sides vanish
        report = cot_triple_decomposition(Angle(30), CFG)
        assert report.lhs.is_zero()
        assert report.passed

    def test_cot_triple_poles_name_the_term(self):
        with pytest.raises(PoleError) as info:
            cot_triple_decomposition(Angle(60), CFG)
        assert info.value.where == "cot 3phi"
        with pytest.raises(PoleError) as info:
            cot_triple_decomposition(Angle(0), CFG)
        assert info.value.where == "cot phi"

    @pytest.mark.parametrize("deg", [Fraction(7, 3), 17, Fraction(1001, 7)])
    def test_cot_triple_chain(self, deg):
        quotient, tangents = cot_triple_chain(Angle(deg), CFG)
        assert quotient.passed and tangents.passed


class TestTanTriple:
    def test_values(self):
        t = hp_tan(Angle(10), CFG)
        assert abs(tan_triple(t) - hp_tan(Angle(30), CFG)) <= identity_tolerance(CFG)

    def test_near_pole_guard(self):
        # tan 30 makes 1 - 3t^2 vanish
        with pytest.raises(NearPoleError):
            tan_triple(hp_tan(Angle(30), CFG))
        just_off = hp_tan(Angle(Fraction(30) + Fraction(1, 10**25)), CFG)
        with pytest.raises(NearPoleError):
            tan_triple(just_off)

    def test_report_poles(self):
        with pytest.raises(PoleError):
            tan_triple_report(Angle(30), CFG)
        with pytest.raises(PoleError):
            tan_triple_report(Angle(90), CFG)

    def test_plain_input(self):
        assert tan_triple(HPReal(0, 20)).is_zero()


def test_report_json():
    data = double_angle(Angle(17), 20).to_json()
    assert set(data) == {"name", "lhs", "rhs", "residual", "tolerance", "passed"}
    assert data["passed"] is True
