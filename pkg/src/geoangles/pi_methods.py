"""pi from the series and products of this package, with certified error.

Each method evaluates its series at the arc s = 90 deg to the smallest
depth whose remainder bound certifies the requested number of decimals,
then checks the result against the independent Machin value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .angles import Angle
from .errors import GeoAnglesError
from .euler_tables import golden_diff, log_secant_table, tangent_table
from .precision import HPReal, _coerce, hp_pi, hp_pow10, hp_radians, round_half_up
from .series import MAX_DEPTH, arc_from_sine, log_secant_sum, tail_estimate, tangent_series, ternary_secant_product

__all__ = ["PiResult", "PrecisionUnreachable", "compute_pi", "METHODS"]

METHODS = ("log-secant", "tangent", "viete", "secant-product")
QUARTER_TURN = Angle(90)


class PrecisionUnreachable(GeoAnglesError):
    pass


@dataclass(frozen=True)
class PiResult:
    method: str
    digits: int
    depth: int
    value: HPReal
    error_bound: HPReal
    text: str
    reference: str
    matches: bool
    historical: bool = False

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "digits": self.digits,
            "depth": self.depth,
            "pi": self.text,
            "error_bound": str(self.error_bound.rounded(6)),
            "reference": self.reference,
            "matches": self.matches,
            "historical": self.historical,
        }


def _target(digits: int, extra: int, cfg) -> HPReal:
    return HPReal(Fraction(1, 10 ** (digits + extra)), cfg)


def _depth_guess(size: float, shrink: float, target_exp: int) -> int:
    """Smallest n with size * shrink**-n below 10**-target_exp."""
    n = math.ceil((math.log10(size) + target_exp) / math.log10(shrink))
    return max(n, 1)


def _check_depth(n: int):
    if n > MAX_DEPTH:
        raise PrecisionUnreachable(f"needs depth {n}, above the cap {MAX_DEPTH}")


def _tangent(digits, cfg, ratio):
    # 2/pi = partial + remainder; an error d in 2/pi moves pi by about 5 d
    target = _target(digits, 3, cfg)
    n = _depth_guess(math.pi / 6 * 2, ratio**2, digits + 3)
    while True:
        _check_depth(n)
        tail, _ = tail_estimate(QUARTER_TURN, ratio, n, cfg, kind="rigorous")
        if tail <= target:
            break
        n += 1
    partial = tangent_series(QUARTER_TURN, ratio, n, cfg, tail=None).value
    return n, 2 / (partial + tail), 5 * tail


def _viete(digits, cfg):
    arc = hp_radians(QUARTER_TURN, cfg)
    n = _depth_guess(float(arc) ** 3 / 6, 4, digits + 3)
    _check_depth(n)
    res = arc_from_sine(QUARTER_TURN, n, cfg)
    # partial <= arc <= partial + bound
    return n, 2 * (res.value + res.tail_estimate / 2), res.tail_estimate


def _secant_product(digits, cfg):
    arc = float(hp_radians(QUARTER_TURN, cfg))
    n = _depth_guess(1.5 * arc**2 / 9, 9, digits + 3)
    _check_depth(n)
    partial = ternary_secant_product(QUARTER_TURN, n, cfg)
    # remaining factors are 1 / (1 - 4/3 sin^2 x_k) with x_k = s / 3**k, k > n;
    # their log sum is at most 3/2 x^2 / (1 - 4/3 x^2) for x = s / 3**(n+1)
    x = hp_radians(QUARTER_TURN, cfg) / 3 ** (n + 1)
    x2 = x * x
    b = Fraction(3, 2) * x2 / (1 - Fraction(4, 3) * x2)
    rel = b / (1 - b)
    return n, 2 * partial * (1 + rel / 2), partial * rel


def _log_secant(digits, cfg):
    target = _target(digits, 3, cfg)
    n = _depth_guess(0.18, 4, digits + 3)
    while True:
        _check_depth(n)
        tail, _ = tail_estimate(QUARTER_TURN, 2, n, cfg, kind="rigorous", series="log-secant")
        if tail <= target:
            break
        n += 1
    partial = log_secant_sum(QUARTER_TURN, n, cfg, tail=None).value
    value = 2 * hp_pow10(partial + tail)
    return n, value, 8 * tail


def compute_pi(method: str, digits: int, cfg=None, ratio: int = 2, euler_pipeline: bool = False) -> PiResult:
    """pi to ``digits`` decimals by ``method``.

    ``euler_pipeline`` (7 decimals, log-secant or tangent only) returns the
    historical table value instead, which is not the correctly rounded pi.
    """
    cfg = _coerce(cfg)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    reference = round_half_up(hp_pi(cfg), digits)
    if euler_pipeline:
        return _historical(method, digits, cfg, reference)
    if digits > cfg.working_digits - 5:
        raise PrecisionUnreachable(
            f"{digits} decimals need a working precision of at least {digits + 5} digits (have {cfg.working_digits})"
        )
    if method == "tangent":
        n, value, err = _tangent(digits, cfg, ratio)
    elif method == "viete":
        n, value, err = _viete(digits, cfg)
    elif method == "secant-product":
        n, value, err = _secant_product(digits, cfg)
    else:
        n, value, err = _log_secant(digits, cfg)
    text = format(round_half_up(value, digits), "f")
    return PiResult(method, digits, n, value, abs(err), text, format(reference, "f"), Decimal(text) == reference)


def _historical(method, digits, cfg, reference) -> PiResult:
    if digits != 7 or method not in ("log-secant", "tangent"):
        raise PrecisionUnreachable("the historical pipeline exists only for 7 decimals via log-secant or tangent")
    table = log_secant_table(cfg) if method == "log-secant" else tangent_table(cfg)
    value = HPReal(Decimal(table.final_pi), cfg)
    return PiResult(
        method,
        digits,
        8 if method == "log-secant" else 6,
        value,
        abs(value - hp_pi(cfg)),
        table.final_pi,
        format(reference, "f"),
        golden_diff(table) is None,
        historical=True,
    )
