"""Exact rational angles in degrees and their sexagesimal notation.

Every angle that appears in the tables (90 deg halved or thirded any number
of times, offsets such as 30 deg or 54 deg) is a rational number of degrees,
so angles are kept as :class:`fractions.Fraction` and never rounded.

Text grammar accepted by :func:`parse`::

    [-]<int>d [<int> [<p>/<q>] m]     e.g. "5d37 1/2m", "33d20m", "90d"
    deg:[-]<p>[/<q>]                  e.g. "deg:45/8"
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import DomainError, ParseError

__all__ = [
    "Angle",
    "SexagesimalForm",
    "divide",
    "to_sexagesimal",
    "from_sexagesimal",
    "format_angle",
    "parse",
]


@dataclass(frozen=True, order=True)
class Angle:
    """An exact angle measured in degrees."""

    degrees: Fraction

    def __init__(self, degrees=0, denominator=1):
        if isinstance(degrees, float) or isinstance(denominator, float):
            raise TypeError("Angle requires exact (int or Fraction) degrees")
        object.__setattr__(self, "degrees", Fraction(degrees) / Fraction(denominator))

    @property
    def numerator(self) -> int:
        return self.degrees.numerator

    @property
    def denominator(self) -> int:
        return self.degrees.denominator

    def __add__(self, other):
        if isinstance(other, Angle):
            return Angle(self.degrees + other.degrees)
        if isinstance(other, Rational):
            return Angle(self.degrees + other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Angle):
            return Angle(self.degrees - other.degrees)
        if isinstance(other, Rational):
            return Angle(self.degrees - other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Rational):
            return Angle(other - self.degrees)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Rational):
            return Angle(self.degrees * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational):
            if other == 0:
                raise DomainError("angle divided by zero")
            return Angle(self.degrees / other)
        return NotImplemented

    def __neg__(self):
        return Angle(-self.degrees)

    def __abs__(self):
        return Angle(abs(self.degrees))

    def __bool__(self):
        return self.degrees != 0

    def is_multiple_of(self, step) -> bool:
        """True when the angle is an integer multiple of ``step`` degrees."""
        return (self.degrees / Fraction(step)).denominator == 1

    def is_odd_multiple_of(self, step) -> bool:
        q = self.degrees / Fraction(step)
        return q.denominator == 1 and q.numerator % 2 == 1

    def to_json(self) -> dict:
        return {"deg_num": self.numerator, "deg_den": self.denominator}

    @classmethod
    def from_json(cls, obj) -> "Angle":
        return cls(int(obj["deg_num"]), int(obj["deg_den"]))

    def __str__(self):
        return format_angle(self)

    def __repr__(self):
        return f"Angle({self.degrees})"


def divide(a: Angle, r: int) -> Angle:
    """Exact division of an angle by an integer ratio."""
    if r == 0:
        raise DomainError("cannot divide an angle by zero")
    return Angle(a.degrees / r)


@dataclass(frozen=True)
class SexagesimalForm:
    degrees: int
    minutes: int
    minute_fraction: Fraction
    negative: bool = False

    def __post_init__(self):
        if self.degrees < 0 or not 0 <= self.minutes < 60:
            raise DomainError("sexagesimal fields out of range")
        if not 0 <= self.minute_fraction < 1:
            raise DomainError("minute fraction must lie in [0, 1)")


def to_sexagesimal(a: Angle) -> SexagesimalForm:
    mag = abs(a.degrees)
    whole = mag.numerator // mag.denominator
    minutes_total = (mag - whole) * 60
    minutes = minutes_total.numerator // minutes_total.denominator
    return SexagesimalForm(whole, minutes, minutes_total - minutes, a.degrees < 0)


def from_sexagesimal(form: SexagesimalForm) -> Angle:
    mag = form.degrees + (form.minutes + form.minute_fraction) / Fraction(60)
    return Angle(-mag if form.negative else mag)


def format_angle(a: Angle, style: str = "ascii", decimal_minutes: bool = False) -> str:
    """Render an angle in sexagesimal notation.

    ``style="ascii"`` produces the :func:`parse` grammar (``5d37 1/2m``);
    ``style="historical"`` uses degree and prime glyphs (``5° 37 1/2′``).
    With ``decimal_minutes`` the minute fraction is written as a decimal
    when it terminates (``5d37.5m``); otherwise the vulgar fraction is kept.
    """
    f = to_sexagesimal(a)
    sign = "-" if f.negative else ""
    deg_mark, min_mark, sep = ("d", "m", "") if style == "ascii" else ("°", "′", " ")
    if f.minutes == 0 and f.minute_fraction == 0:
        return f"{sign}{f.degrees}{deg_mark}"
    minutes = str(f.minutes)
    if f.minute_fraction:
        frac = f.minute_fraction
        dec = _terminating_decimal(frac) if decimal_minutes else None
        if dec is not None:
            minutes += dec[1:]
        else:
            minutes += f" {frac.numerator}/{frac.denominator}"
    return f"{sign}{f.degrees}{deg_mark}{sep}{minutes}{min_mark}"


def _terminating_decimal(frac: Fraction):
    den = frac.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return None
    places = max(twos, fives)
    digits = frac.numerator * 10**places // frac.denominator
    return f"0.{digits:0{places}d}"


_SEXAGESIMAL = re.compile(
    r"\s*(?P<sign>-)?(?P<deg>\d+)\s*d"
    r"(?:\s*(?P<min>\d+)(?:\s+(?P<fnum>\d+)\s*/\s*(?P<fden>\d+))?\s*m)?\s*"
)
_RATIONAL = re.compile(r"\s*deg:\s*(?P<num>-?\d+)(?:\s*/\s*(?P<den>\d+))?\s*")


def parse(text: str) -> Angle:
    """Parse an angle written in the module grammar."""
    if text.lstrip().startswith("deg:"):
        m = _RATIONAL.fullmatch(text)
        if m is None:
            raise ParseError("malformed rational angle", text, _first_mismatch(_RATIONAL, text))
        den = int(m["den"]) if m["den"] else 1
        if den == 0:
            raise ParseError("zero denominator", text, m.start("den"))
        return Angle(int(m["num"]), den)

    m = _SEXAGESIMAL.fullmatch(text)
    if m is None:
        raise ParseError("malformed angle", text, _first_mismatch(_SEXAGESIMAL, text))
    minutes = Fraction(0)
    if m["min"] is not None:
        whole = int(m["min"])
        if whole >= 60:
            raise ParseError("minutes must be below 60", text, m.start("min"))
        minutes = Fraction(whole)
        if m["fnum"] is not None:
            num, den = int(m["fnum"]), int(m["fden"])
            if den == 0:
                raise ParseError("zero denominator", text, m.start("fden"))
            if num >= den:
                raise ParseError("minute fraction must be below 1", text, m.start("fnum"))
            minutes += Fraction(num, den)
    mag = int(m["deg"]) + minutes / 60
    return Angle(-mag if m["sign"] else mag)


# suffixes that finish any viable prefix of either grammar
_COMPLETIONS = ("", "0", "d", "0d", "m", "0m", "/1m", "1/2m", " 1/2m", "1", "/1", "1m", "2m")


def _first_mismatch(pattern: re.Pattern, text: str) -> int:
    """Length of the longest prefix of ``text`` that can still become a match."""
    for end in range(len(text), -1, -1):
        prefix = text[:end]
        if any(pattern.fullmatch(prefix + tail) for tail in _COMPLETIONS):
            return end
    return 0
