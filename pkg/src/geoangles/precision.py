"""Configurable-precision real arithmetic and trigonometry on exact angles.

Values are :class:`HPReal` instances: a :class:`decimal.Decimal` carried at
``P + g`` significant digits (working digits plus guard digits) together
with the nominal precision ``P``.  Arithmetic between two values keeps
the larger precision.  The kernel guarantees relative error at most
``10 * 10**-P`` per operation; the guard digits make that comfortable.

Trigonometric functions take an :class:`~geoangles.angles.Angle`.  Range
reduction happens on the exact rational degree value, so the angles that
matter here (90 deg / 2**k, 30 deg + 90 deg / 3**k, ...) carry no
reduction error.  The reduced angle lies in [0, 45] deg; it is converted to
radians with a Machin pi, halved below 0.1 rad, summed by Taylor series in
scaled-integer arithmetic and doubled back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_DOWN, ROUND_HALF_UP, Context, Decimal
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .angles import Angle
from .errors import DomainError, PoleError

__all__ = [
    "PrecisionConfig",
    "HPReal",
    "hp_sin",
    "hp_cos",
    "hp_tan",
    "hp_cot",
    "hp_sec",
    "hp_sin_cos",
    "hp_log10",
    "hp_pow10",
    "hp_pi",
    "hp_radians",
    "hp_sin_radians",
    "hp_cos_radians",
    "round_half_up",
    "round_down",
]

DEFAULT_DIGITS = 40


@dataclass(frozen=True)
class PrecisionConfig:
    """Working precision ``P`` (significant decimal digits) and guard digits."""

    working_digits: int = DEFAULT_DIGITS
    guard_digits: int | None = None

    def __post_init__(self):
        if self.working_digits < 10:
            raise DomainError(f"working precision must be >= 10 digits, got {self.working_digits}")
        if self.guard_digits is None:
            object.__setattr__(self, "guard_digits", max(5, math.ceil(self.working_digits / 10)))
        elif self.guard_digits < 5:
            raise DomainError(f"guard digits must be >= 5, got {self.guard_digits}")

    @property
    def total_digits(self) -> int:
        return self.working_digits + self.guard_digits

    def context(self) -> Context:
        return Context(prec=self.total_digits, rounding=ROUND_HALF_UP, Emax=10**9, Emin=-(10**9))

    def with_digits(self, digits: int) -> "PrecisionConfig":
        return PrecisionConfig(digits)

    def doubled(self) -> "PrecisionConfig":
        return PrecisionConfig(2 * self.working_digits)


def _coerce(cfg) -> PrecisionConfig:
    if cfg is None:
        return PrecisionConfig()
    if isinstance(cfg, int):
        return PrecisionConfig(cfg)
    return cfg


class HPReal:
    """Immutable high-precision real number."""

    __slots__ = ("_value", "_cfg")

    def __init__(self, value, cfg: PrecisionConfig | int | None = None):
        cfg = _coerce(cfg)
        ctx = cfg.context()
        if isinstance(value, HPReal):
            value = value._value
        if isinstance(value, Decimal):
            v = ctx.plus(value)
        elif isinstance(value, int):
            v = ctx.create_decimal(value)
        elif isinstance(value, Rational):
            v = ctx.divide(Decimal(value.numerator), Decimal(value.denominator))
        elif isinstance(value, str):
            v = ctx.create_decimal(value)
        else:
            raise TypeError(f"cannot build HPReal from {type(value).__name__}")
        object.__setattr__(self, "_value", v)
        object.__setattr__(self, "_cfg", cfg)

    def __setattr__(self, name, value):
        raise AttributeError("HPReal is immutable")

    @classmethod
    def _raw(cls, value: Decimal, cfg: PrecisionConfig) -> "HPReal":
        obj = object.__new__(cls)
        object.__setattr__(obj, "_value", value)
        object.__setattr__(obj, "_cfg", cfg)
        return obj

    @property
    def precision(self) -> int:
        return self._cfg.working_digits

    @property
    def config(self) -> PrecisionConfig:
        return self._cfg

    @property
    def magnitude(self) -> Decimal:
        return self._value

    def to_decimal(self) -> Decimal:
        return self._value

    # arithmetic -----------------------------------------------------------

    def _operand(self, other):
        if isinstance(other, HPReal):
            cfg = other._cfg if other._cfg.total_digits > self._cfg.total_digits else self._cfg
            return other._value, cfg
        if isinstance(other, (int, Decimal)):
            return Decimal(other), self._cfg
        if isinstance(other, Rational):
            return HPReal(other, self._cfg)._value, self._cfg
        return None, None

    def _binary(self, other, op, reverse=False):
        value, cfg = self._operand(other)
        if value is None:
            return NotImplemented
        ctx = cfg.context()
        a, b = (value, self._value) if reverse else (self._value, value)
        if op == "div" and b == 0:
            raise DomainError("division by zero")
        result = {"add": ctx.add, "sub": ctx.subtract, "mul": ctx.multiply, "div": ctx.divide}[op](a, b)
        if result == 0:
            result = Decimal(0)
        return HPReal._raw(result, cfg)

    def __add__(self, other):
        return self._binary(other, "add")

    def __radd__(self, other):
        return self._binary(other, "add", reverse=True)

    def __sub__(self, other):
        return self._binary(other, "sub")

    def __rsub__(self, other):
        return self._binary(other, "sub", reverse=True)

    def __mul__(self, other):
        return self._binary(other, "mul")

    def __rmul__(self, other):
        return self._binary(other, "mul", reverse=True)

    def __truediv__(self, other):
        return self._binary(other, "div")

    def __rtruediv__(self, other):
        return self._binary(other, "div", reverse=True)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return 1 / (self**-exponent)
        return HPReal._raw(self._cfg.context().power(self._value, exponent), self._cfg)

    def square(self) -> "HPReal":
        return self * self

    def __neg__(self):
        if self._value == 0:
            return HPReal._raw(Decimal(0), self._cfg)
        return HPReal._raw(self._value.copy_negate(), self._cfg)

    def __pos__(self):
        return self

    def __abs__(self):
        return HPReal._raw(self._value.copy_abs(), self._cfg)

    # comparison (exact) ---------------------------------------------------

    def _cmp_value(self, other):
        if isinstance(other, HPReal):
            return other._value
        if isinstance(other, (int, Decimal)):
            return Decimal(other)
        if isinstance(other, Rational):
            return None
        return NotImplemented

    def _compare(self, other):
        if isinstance(other, Rational) and not isinstance(other, int):
            # exact: compare against the fraction itself
            lhs = Fraction(self._value)
            return (lhs > other) - (lhs < other)
        value = self._cmp_value(other)
        if value is NotImplemented:
            return NotImplemented
        return (self._value > value) - (self._value < value)

    def __eq__(self, other):
        c = self._compare(other)
        return c if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._compare(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._compare(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._compare(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._compare(other)
        return c if c is NotImplemented else c >= 0

    def __hash__(self):
        return hash(self._value)

    def is_zero(self) -> bool:
        return self._value == 0

    def sign(self) -> int:
        return (self._value > 0) - (self._value < 0)

    # conversion -----------------------------------------------------------

    def __float__(self):
        return float(self._value)

    def rounded(self, digits: int | None = None) -> Decimal:
        """The value rounded half-up to ``digits`` significant digits (default ``P``)."""
        digits = self.precision if digits is None else digits
        return Context(prec=digits, rounding=ROUND_HALF_UP).plus(self._value)

    def fixed(self, places: int) -> Decimal:
        """Round half-up to ``places`` decimals after the point."""
        return round_half_up(self._value, places)

    def __str__(self):
        return str(self.rounded())

    def __repr__(self):
        return f"HPReal('{self.rounded()}', P={self.precision})"


def round_half_up(value, places: int) -> Decimal:
    if isinstance(value, HPReal):
        value = value.to_decimal()
    return Decimal(value).quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP, context=_EXACT)


def round_down(value, places: int) -> Decimal:
    """Truncate toward zero to ``places`` decimals."""
    if isinstance(value, HPReal):
        value = value.to_decimal()
    return Decimal(value).quantize(Decimal(1).scaleb(-places), rounding=ROUND_DOWN, context=_EXACT)


# ---------------------------------------------------------------------------
# pi
# ---------------------------------------------------------------------------


def _from_fixed(n: int, wp: int) -> Decimal:
    """Exact Decimal for n * 10**-wp."""
    return Decimal(n).scaleb(-wp, _EXACT)


_EXACT = Context(prec=10**6, Emax=10**9, Emin=-(10**9))


def _arccot_fixed(x: int, one: int) -> int:
    total = term = one // x
    x2 = x * x
    n = 1
    sign = -1
    while term:
        term //= x2
        n += 2
        total += sign * (term // n)
        sign = -sign
    return total


@lru_cache(maxsize=64)
def _pi_fixed(wp: int) -> int:
    """floor-ish of pi * 10**wp, accurate to a few units in the last place."""
    guard = 10
    one = 10 ** (wp + guard)
    pi = 4 * (4 * _arccot_fixed(5, one) - _arccot_fixed(239, one))
    return pi // 10**guard


def hp_pi(cfg=None) -> HPReal:
    """pi at working precision (Machin's arctangent formula)."""
    cfg = _coerce(cfg)
    wp = cfg.total_digits + 5
    return HPReal(_from_fixed(_pi_fixed(wp), wp), cfg)


def hp_radians(a: Angle, cfg=None) -> HPReal:
    cfg = _coerce(cfg)
    lead = _leading_zeros(a.degrees)
    wp = cfg.total_digits + lead + 5
    val = _pi_fixed(wp) * abs(a.numerator) // (180 * a.denominator)
    if a.numerator < 0:
        val = -val
    return HPReal(_from_fixed(val, wp), cfg)


# ---------------------------------------------------------------------------
# sine and cosine
# ---------------------------------------------------------------------------


def _leading_zeros(deg: Fraction) -> int:
    """Upper estimate of the zeros after the point in deg * pi / 180."""
    if deg == 0:
        return 0
    deg = abs(deg)
    return max(0, len(str(deg.denominator)) - len(str(deg.numerator)) + 3)


def _sin_cos_small(x: int, one: int) -> tuple[int, int]:
    """sin and cos of x / one for 0 <= x / one <= pi / 4 (scaled integers)."""
    halvings = 0
    limit = one // 10
    while x >= limit:
        x //= 2
        halvings += 1
    x2 = x * x // one
    s = term = x
    k = 1
    while term:
        term = -term * x2 // (one * (k + 1) * (k + 2))
        s += term
        k += 2
    c = term = one
    k = 0
    while term:
        term = -term * x2 // (one * (k + 1) * (k + 2))
        c += term
        k += 2
    for _ in range(halvings):
        # cos 2x = 1 - 2 sin^2 x keeps full relative accuracy for small x
        s, c = 2 * s * c // one, one - 2 * s * s // one
    return s, c


@lru_cache(maxsize=65536)
def _first_octant(phi: Fraction, digits: int) -> tuple[Decimal, Decimal]:
    """(sin, cos) of phi degrees, 0 <= phi <= 45, to ``digits`` significant digits."""
    ctx = Context(prec=digits, rounding=ROUND_HALF_UP)
    if phi == 0:
        return Decimal(0), Decimal(1)
    extra = 12
    wp = digits + _leading_zeros(phi) + extra
    one = 10**wp
    x = _pi_fixed(wp) * phi.numerator // (180 * phi.denominator)
    s, c = _sin_cos_small(x, one)
    sin = ctx.plus(_from_fixed(s, wp))
    cos = ctx.plus(_from_fixed(c, wp))
    if phi == 30:
        sin = Decimal("0.5")
    elif phi == 45:
        cos = sin
    return sin, cos


def _reduce(a: Angle) -> tuple[int, Fraction]:
    """Quadrant index and reference angle theta in [0, 90)."""
    deg = a.degrees % 360
    q = int(deg // 90)
    return q, deg - 90 * q


def _sin_cos_decimal(a: Angle, cfg: PrecisionConfig) -> tuple[Decimal, Decimal]:
    q, theta = _reduce(a)
    digits = cfg.total_digits
    if theta <= 45:
        s, c = _first_octant(theta, digits)
    else:
        c, s = _first_octant(90 - theta, digits)
    if q == 0:
        return s, c
    if q == 1:
        return c, _neg(s)
    if q == 2:
        return _neg(s), _neg(c)
    return _neg(c), s


def _neg(d: Decimal) -> Decimal:
    return d if d == 0 else d.copy_negate()


def hp_sin_cos(a: Angle, cfg=None) -> tuple[HPReal, HPReal]:
    cfg = _coerce(cfg)
    s, c = _sin_cos_decimal(a, cfg)
    return HPReal._raw(s, cfg), HPReal._raw(c, cfg)


def hp_sin(a: Angle, cfg=None) -> HPReal:
    return hp_sin_cos(a, cfg)[0]


def hp_cos(a: Angle, cfg=None) -> HPReal:
    return hp_sin_cos(a, cfg)[1]


def _check_tan_pole(a: Angle, name: str):
    if a.is_odd_multiple_of(90):
        raise PoleError(f"{name} has a pole at {a}", where=str(a))


def hp_tan(a: Angle, cfg=None) -> HPReal:
    _check_tan_pole(a, "tan")
    s, c = hp_sin_cos(a, cfg)
    return s / c


def hp_sec(a: Angle, cfg=None) -> HPReal:
    _check_tan_pole(a, "sec")
    return 1 / hp_cos(a, cfg)


def hp_cot(a: Angle, cfg=None) -> HPReal:
    if a.is_multiple_of(180):
        raise PoleError(f"cot has a pole at {a}", where=str(a))
    s, c = hp_sin_cos(a, cfg)
    return c / s


# ---------------------------------------------------------------------------
# radian arguments
# ---------------------------------------------------------------------------


def _sin_cos_radians(x: HPReal) -> tuple[HPReal, HPReal]:
    cfg = x.config
    wp = cfg.total_digits + max(0, x.to_decimal().adjusted()) + 10
    one = 10**wp
    pi = _pi_fixed(wp)
    xi = int((x.to_decimal() * one).to_integral_value())
    half_pi = pi // 2
    q, r = divmod(xi + half_pi // 2, half_pi)
    r -= half_pi // 2
    s, c = _sin_cos_small(abs(r), one)
    if r < 0:
        s = -s
    q %= 4
    s, c = [(s, c), (c, -s), (-s, -c), (-c, s)][q]
    return HPReal(_from_fixed(s, wp), cfg), HPReal(_from_fixed(c, wp), cfg)


def hp_sin_radians(x: HPReal) -> HPReal:
    """sin of a radian argument (floating range reduction)."""
    return _sin_cos_radians(x)[0]


def hp_cos_radians(x: HPReal) -> HPReal:
    return _sin_cos_radians(x)[1]


# ---------------------------------------------------------------------------
# logarithms
# ---------------------------------------------------------------------------


def hp_log10(x, cfg=None) -> HPReal:
    """Base-10 logarithm."""
    if isinstance(x, HPReal):
        cfg = x.config if cfg is None else _coerce(cfg)
        value = x.to_decimal()
    else:
        cfg = _coerce(cfg)
        value = HPReal(x, cfg).to_decimal()
    if value <= 0:
        raise DomainError(f"log10 of non-positive value {value}")
    return HPReal._raw(cfg.context().log10(value), cfg)


def hp_pow10(x, cfg=None) -> HPReal:
    """10 ** x, the antilogarithm."""
    if isinstance(x, HPReal):
        cfg = x.config if cfg is None else _coerce(cfg)
        value = x.to_decimal()
    else:
        cfg = _coerce(cfg)
        value = HPReal(x, cfg).to_decimal()
    ctx = cfg.context()
    return HPReal._raw(ctx.power(Decimal(10), value), cfg)
