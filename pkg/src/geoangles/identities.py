"""Closed-form multiple-angle identities, evaluated side by side.

Each evaluator returns an :class:`IdentityReport` carrying both sides,
their difference and the tolerance ``10**(3 - P)``.  Poles are detected on
the exact angle before anything is evaluated.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .angles import Angle
from .errors import NearPoleError, PoleError
from .precision import HPReal, PrecisionConfig, _coerce, hp_cos, hp_cot, hp_sin, hp_tan

__all__ = [
    "IdentityReport",
    "double_angle",
    "triple_angle_sin",
    "factor_one_minus_43sin2",
    "tan_cot_relation",
    "tan_triple",
    "tan_triple_report",
    "cot_triple_decomposition",
    "cot_triple_chain",
    "sin4_product",
    "sin5_product",
    "IDENTITIES",
    "identity_tolerance",
    "random_angle",
    "verify_identity",
]


@dataclass(frozen=True)
class IdentityReport:
    name: str
    lhs: HPReal
    rhs: HPReal
    residual: HPReal
    tolerance: HPReal
    passed: bool

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "lhs": str(self.lhs.rounded()),
            "rhs": str(self.rhs.rounded()),
            "residual": str(self.residual.rounded(6)),
            "tolerance": str(self.tolerance.rounded(6)),
            "passed": self.passed,
        }


def identity_tolerance(cfg: PrecisionConfig) -> HPReal:
    return HPReal(Fraction(1, 10 ** (cfg.working_digits - 3)), cfg)


def make_report(name: str, lhs: HPReal, rhs: HPReal, cfg: PrecisionConfig, tolerance=None) -> IdentityReport:
    residual = lhs - rhs
    tol = identity_tolerance(cfg) if tolerance is None else tolerance
    return IdentityReport(name, lhs, rhs, residual, tol, abs(residual) <= tol)


def double_angle(phi: Angle, cfg=None) -> IdentityReport:
    """sin 2phi = 2 sin phi cos phi."""
    cfg = _coerce(cfg)
    lhs = hp_sin(2 * phi, cfg)
    rhs = 2 * hp_sin(phi, cfg) * hp_cos(phi, cfg)
    return make_report("double-angle", lhs, rhs, cfg)


def triple_angle_sin(phi: Angle, cfg=None) -> IdentityReport:
    """sin 3phi = sin phi (3 - 4 sin^2 phi)."""
    cfg = _coerce(cfg)
    s = hp_sin(phi, cfg)
    return make_report("triple-angle-sin", hp_sin(3 * phi, cfg), s * (3 - 4 * s * s), cfg)


def factor_one_minus_43sin2(phi: Angle, cfg=None) -> IdentityReport:
    """1 - 4/3 sin^2 phi = 4/3 cos(30 + phi) cos(30 - phi)."""
    cfg = _coerce(cfg)
    s = hp_sin(phi, cfg)
    lhs = 1 - Fraction(4, 3) * (s * s)
    thirty = Angle(30)
    rhs = Fraction(4, 3) * hp_cos(thirty + phi, cfg) * hp_cos(thirty - phi, cfg)
    return make_report("factor-43", lhs, rhs, cfg)


def tan_cot_relation(phi: Angle, cfg=None) -> IdentityReport:
    """tan phi = cot phi - 2 cot 2phi."""
    cfg = _coerce(cfg)
    if phi.is_multiple_of(90):
        raise PoleError(f"tan-cot relation undefined at {phi}", where=str(phi))
    lhs = hp_tan(phi, cfg)
    rhs = hp_cot(phi, cfg) - 2 * hp_cot(2 * phi, cfg)
    return make_report("tan-cot", lhs, rhs, cfg)


def tan_triple(t: HPReal, cfg=None) -> HPReal:
    """tan 3phi as a rational function of t = tan phi."""
    cfg = t.config if cfg is None else _coerce(cfg)
    t = HPReal(t, cfg)
    t2 = t * t
    denom = 1 - 3 * t2
    if abs(denom) < HPReal(Fraction(1, 10 ** (cfg.working_digits // 2)), cfg):
        raise NearPoleError(f"1 - 3t^2 = {denom.rounded(6)} is within 10^-{cfg.working_digits // 2} of zero")
    return (3 * t - t2 * t) / denom


def tan_triple_report(phi: Angle, cfg=None) -> IdentityReport:
    """tan_triple(tan phi) against tan 3phi."""
    cfg = _coerce(cfg)
    if phi.is_odd_multiple_of(90) or (3 * phi).is_odd_multiple_of(90):
        raise PoleError(f"tan-triple undefined at {phi}", where=str(phi))
    return make_report("tan-triple", tan_triple(hp_tan(phi, cfg), cfg), hp_tan(3 * phi, cfg), cfg)


def _cot_triple_poles(phi: Angle):
    if phi.is_multiple_of(180):
        raise PoleError(f"cot phi has a pole at phi = {phi}", where="cot phi")
    if (3 * phi).is_multiple_of(180):
        raise PoleError(f"cot 3phi has a pole at phi = {phi}", where="cot 3phi")
    for label, arg in (("tan(30+phi)", Angle(30) + phi), ("tan(30-phi)", Angle(30) - phi)):
        if arg.is_odd_multiple_of(90):
            raise PoleError(f"{label} has a pole at phi = {phi}", where=label)


def cot_triple_decomposition(phi: Angle, cfg=None) -> IdentityReport:
    """cot 3phi = 1/3 cot phi - 1/3 tan(30 + phi) + 1/3 tan(30 - phi)."""
    cfg = _coerce(cfg)
    _cot_triple_poles(phi)
    thirty = Angle(30)
    lhs = hp_cot(3 * phi, cfg)
    rhs = (hp_cot(phi, cfg) - hp_tan(thirty + phi, cfg) + hp_tan(thirty - phi, cfg)) / 3
    return make_report("cot-triple", lhs, rhs, cfg)


def cot_triple_chain(phi: Angle, cfg=None) -> tuple[IdentityReport, IdentityReport]:
    """The two intermediate equalities behind the cot 3phi decomposition.

    Both compare ``3 cot 3phi - cot phi`` with, first, the quotient
    ``-sin 2phi / (cos(30 + phi) cos(30 - phi))`` and, second, the tangent
    difference ``tan(30 - phi) - tan(30 + phi)``.
    """
    cfg = _coerce(cfg)
    _cot_triple_poles(phi)
    thirty = Angle(30)
    left = 3 * hp_cot(3 * phi, cfg) - hp_cot(phi, cfg)
    quotient = -hp_sin(2 * phi, cfg) / (hp_cos(thirty + phi, cfg) * hp_cos(thirty - phi, cfg))
    tangents = hp_tan(thirty - phi, cfg) - hp_tan(thirty + phi, cfg)
    return (
        make_report("cot-triple-quotient", left, quotient, cfg),
        make_report("cot-triple-tangents", left, tangents, cfg),
    )


def sin4_product(phi: Angle, cfg=None) -> IdentityReport:
    """sin 4phi = 8 sin phi cos(45 + phi) cos(45 - phi) cos phi."""
    cfg = _coerce(cfg)
    a = Angle(45)
    rhs = 8 * hp_sin(phi, cfg) * hp_cos(a + phi, cfg) * hp_cos(a - phi, cfg) * hp_cos(phi, cfg)
    return make_report("sin4-product", hp_sin(4 * phi, cfg), rhs, cfg)


def sin5_product(phi: Angle, cfg=None) -> IdentityReport:
    """sin 5phi = 16 sin phi cos(18 +- phi) cos(54 +- phi)."""
    cfg = _coerce(cfg)
    a, b = Angle(18), Angle(54)
    rhs = 16 * hp_sin(phi, cfg)
    for arg in (a + phi, a - phi, b + phi, b - phi):
        rhs = rhs * hp_cos(arg, cfg)
    return make_report("sin5-product", hp_sin(5 * phi, cfg), rhs, cfg)


def _excluded_tan_cot(phi: Angle) -> bool:
    return phi.is_multiple_of(90)


def _excluded_tan_triple(phi: Angle) -> bool:
    return phi.is_odd_multiple_of(90) or (3 * phi).is_odd_multiple_of(90)


def _excluded_cot_triple(phi: Angle) -> bool:
    return phi.is_multiple_of(60)


def _never(phi: Angle) -> bool:
    return False


# name -> (evaluator, exact predicate for angles outside the domain)
IDENTITIES = {
    "double-angle": (double_angle, _never),
    "triple-angle-sin": (triple_angle_sin, _never),
    "factor-43": (factor_one_minus_43sin2, _never),
    "tan-cot": (tan_cot_relation, _excluded_tan_cot),
    "tan-triple": (tan_triple_report, _excluded_tan_triple),
    "cot-triple": (cot_triple_decomposition, _excluded_cot_triple),
    "sin4-product": (sin4_product, _never),
    "sin5-product": (sin5_product, _never),
}


def random_angle(rng, excluded=_never, lo: int = 0, hi: int = 180, max_den: int = 10**4) -> Angle:
    """Random rational angle strictly inside (lo, hi) degrees, avoiding ``excluded``."""
    while True:
        q = rng.randint(1, max_den)
        p = rng.randint(lo * q + 1, hi * q - 1)
        a = Angle(p, q)
        if not excluded(a):
            return a


def verify_identity(name: str, samples: int, cfg=None, seed: int = 0, angles=None) -> list[IdentityReport]:
    """Run a named identity on ``samples`` seeded random angles (or on ``angles``)."""
    cfg = _coerce(cfg)
    evaluator, excluded = IDENTITIES[name]
    if angles is None:
        rng = random.Random(f"{name}:{seed}")
        angles = [random_angle(rng, excluded) for _ in range(samples)]
    return [evaluator(a, cfg) for a in angles]
