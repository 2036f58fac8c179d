"""Finite-depth products and series over arcs in geometric progression.

Every evaluator truncates an infinite product or series at depth ``n`` and
also reports the residual of the exact finite identity that holds at that
depth.  The binary tangent series, for instance, satisfies

    cot s + sum_{k=1..n} 2**-k tan(s / 2**k) = 2**-n cot(s / 2**n)

for every ``n``, and the right side tends to ``1/s`` (``s`` in radians).
The ternary, quaternary and quinary forms telescope the same way, with
tangent terms built from the offsets in :data:`RATIO_SPECS`.

Tail estimates come in two kinds.  ``asymptotic`` uses the leading term of
the small-angle expansion.  ``rigorous`` continues the series at doubled
precision until a term drops below ``10**-P`` and bounds what is left by
``first omitted term * r**2 / (r**2 - 1)``.  The bound holds because each
term shape is a power series in the arc with non-negative coefficients, so
consecutive terms shrink by at least a factor ``r**2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_UP, Context, Decimal
from fractions import Fraction

from .angles import Angle, format_angle
from .errors import DomainError, PoleError
from .identities import IdentityReport, identity_tolerance, make_report
from .precision import (
    HPReal,
    PrecisionConfig,
    _coerce,
    hp_cos,
    hp_cot,
    hp_log10,
    hp_radians,
    hp_sec,
    hp_sin,
    hp_tan,
    round_half_up,
)

__all__ = [
    "TruncationSpec",
    "Term",
    "SeriesResult",
    "RatioSpec",
    "RATIO_SPECS",
    "ratio_spec",
    "cos_product_partial",
    "viete_sin",
    "arc_from_sine",
    "log_secant_sum",
    "tangent_series",
    "tangent_term",
    "telescoped_value",
    "secant_squared_series",
    "SecantSquaredResult",
    "ternary_sin_product",
    "ternary_secant_product",
    "tail_estimate",
    "MAX_DEPTH",
]

MAX_DEPTH = 10000
ASYMPTOTIC_LIMIT = Fraction(1, 5)


@dataclass(frozen=True)
class TruncationSpec:
    """Either a fixed depth or a term-size threshold with a hard depth cap."""

    mode: str = "fixed_depth"
    depth: int = 0
    epsilon: Decimal | None = None
    cap: int = MAX_DEPTH

    def __post_init__(self):
        if self.mode == "fixed_depth":
            if self.depth < 0:
                raise DomainError("depth must be non-negative")
        elif self.mode == "term_threshold":
            if self.epsilon is None or Decimal(self.epsilon) <= 0:
                raise DomainError("threshold mode needs epsilon > 0")
            if not 0 < self.cap <= MAX_DEPTH:
                raise DomainError(f"depth cap must lie in 1..{MAX_DEPTH}")
        else:
            raise DomainError(f"unknown truncation mode {self.mode!r}")

    @classmethod
    def fixed(cls, depth: int) -> "TruncationSpec":
        return cls("fixed_depth", depth=depth)

    @classmethod
    def threshold(cls, epsilon, cap: int = MAX_DEPTH) -> "TruncationSpec":
        return cls("term_threshold", epsilon=Decimal(str(epsilon)), cap=cap)


def _truncation(depth) -> TruncationSpec:
    return depth if isinstance(depth, TruncationSpec) else TruncationSpec.fixed(depth)


@dataclass(frozen=True)
class Term:
    k: int
    label: str
    value: HPReal
    angle: Angle | None = None


@dataclass(frozen=True)
class SeriesResult:
    value: HPReal
    terms: tuple[Term, ...]
    tail_estimate: HPReal | None
    tail_bound_kind: str | None
    depth_used: int
    combine: str = "sum"
    converged: bool = True
    identity_residual: HPReal | None = None
    limit: HPReal | None = None

    def resum(self) -> HPReal:
        """Recombine the ledger in index order."""
        values = [t.value for t in self.terms]
        if self.combine == "product":
            acc = HPReal(1, self.value.config)
            for v in values:
                acc = acc * v
            return acc
        acc = HPReal(0, self.value.config)
        for v in values:
            acc = acc + v
        return acc

    def by_depth(self) -> list[HPReal]:
        """Per-depth aggregate of the ledger (index ``k`` -> combined rows)."""
        cfg = self.value.config
        out: dict[int, HPReal] = {}
        for t in self.terms:
            out[t.k] = out[t.k] + t.value if t.k in out else t.value
        return [out.get(k, HPReal(0, cfg)) for k in range(self.depth_used + 1)]

    def to_json(self) -> dict:
        data = {
            "value": str(self.value.rounded()),
            "depth": self.depth_used,
            "terms": [{"k": t.k, "label": t.label, "value": str(t.value.rounded())} for t in self.terms],
            "tail": {
                "estimate": None if self.tail_estimate is None else str(self.tail_estimate.rounded()),
                "kind": self.tail_bound_kind,
            },
            "converged": self.converged,
        }
        if self.identity_residual is not None:
            data["identity_residual"] = str(self.identity_residual.rounded(6))
        if self.limit is not None:
            data["limit"] = str(self.limit.rounded())
        return data


@dataclass(frozen=True)
class RatioSpec:
    """Tangent-term shape for arcs shrinking by ``ratio``.

    The depth-k term is ``r**-k * sum(sign * tan(offset + sign * s / r**k))``
    over ``offsets``; the coefficient sign and the argument sign coincide
    for every shape, so one sign per offset suffices.
    """

    ratio: int
    offsets: tuple[tuple[Angle, int], ...] = field(default=())

    def __post_init__(self):
        if self.ratio not in (2, 3, 4, 5):
            raise DomainError(f"ratio must be one of 2, 3, 4, 5; got {self.ratio}")

    @property
    def pole_free_radius(self) -> Fraction:
        """Arguments below this size (degrees) cannot reach a tangent pole."""
        return min(90 - o.degrees for o, _ in self.offsets)


RATIO_SPECS = {
    2: RatioSpec(2, ((Angle(0), 1),)),
    3: RatioSpec(3, ((Angle(30), 1), (Angle(30), -1))),
    4: RatioSpec(4, ((Angle(0), 1), (Angle(45), 1), (Angle(45), -1))),
    5: RatioSpec(5, ((Angle(18), 1), (Angle(18), -1), (Angle(54), 1), (Angle(54), -1))),
}


def ratio_spec(r) -> RatioSpec:
    if isinstance(r, RatioSpec):
        return r
    if r not in RATIO_SPECS:
        raise DomainError(f"ratio must be one of 2, 3, 4, 5; got {r}")
    return RATIO_SPECS[r]


def _one(cfg) -> HPReal:
    return HPReal(1, cfg)


def _pow(base: int, k: int, cfg) -> HPReal:
    return HPReal(base**k, cfg)


def _upward(value: HPReal, cfg: PrecisionConfig) -> HPReal:
    """Round away from zero into ``cfg`` and add one unit of slack."""
    ctx = Context(prec=cfg.total_digits, rounding=ROUND_UP)
    v = ctx.plus(value.to_decimal())
    if v == 0:
        return HPReal(0, cfg)
    ulp = Decimal(1).scaleb(v.adjusted() - cfg.total_digits + 1)
    return HPReal(ctx.add(v, ulp.copy_sign(v)), cfg)


def _continuation(term, start: int, ratio_sq: int, cfg: PrecisionConfig) -> HPReal:
    """Sum ``term(k)`` for k >= start at doubled precision, plus a geometric bound."""
    hi = cfg.doubled()
    eps = HPReal(Fraction(1, 10**cfg.working_digits), hi)
    total = HPReal(0, hi)
    k = start
    while True:
        t = term(k, hi)
        if abs(t) < eps:
            total = total + t * Fraction(ratio_sq, ratio_sq - 1)
            return _upward(total, cfg)
        total = total + t
        k += 1
        if k - start > MAX_DEPTH:
            raise DomainError("tail continuation did not reach the term threshold")


# ---------------------------------------------------------------------------
# binary product for the sine
# ---------------------------------------------------------------------------


def _sinc_limit(s: Angle, cfg) -> HPReal:
    if not s:
        return _one(cfg)
    return hp_sin(s, cfg) / hp_radians(s, cfg)


def cos_product_partial(s: Angle, n: int, cfg=None) -> SeriesResult:
    """prod_{k=1..n} cos(s / 2**k); the infinite product is sin s / s."""
    cfg = _coerce(cfg)
    if n < 0:
        raise DomainError("depth must be non-negative")
    terms = []
    value = _one(cfg)
    for k in range(1, n + 1):
        a = s / 2**k
        c = hp_cos(a, cfg)
        terms.append(Term(k, f"Cos {format_angle(a)}", c, a))
        value = value * c
    x = hp_radians(s / 2**n, cfg)
    finite = _pow(2, n, cfg) * hp_sin(s / 2**n, cfg) * value
    return SeriesResult(
        value=value,
        terms=tuple(terms),
        tail_estimate=-value * x * x / 6,
        tail_bound_kind="asymptotic",
        depth_used=n,
        combine="product",
        identity_residual=finite - hp_sin(s, cfg),
        limit=_sinc_limit(s, cfg),
    )


def viete_sin(s: Angle, n: int, cfg=None) -> HPReal:
    """2**n sin(s / 2**n) prod_{k=1..n} cos(s / 2**k), which equals sin s exactly."""
    cfg = _coerce(cfg)
    return _pow(2, n, cfg) * hp_sin(s / 2**n, cfg) * cos_product_partial(s, n, cfg).value


def arc_from_sine(s: Angle, n: int, cfg=None) -> SeriesResult:
    """sin s * prod_{k=1..n} sec(s / 2**k), tending to the arc length of ``s``.

    The partial product equals ``2**n sin(s / 2**n)`` exactly, so its
    shortfall from the arc is ``s (1 - sin x / x)`` with ``x = s / 2**n``,
    which never exceeds ``|s| x**2 / 6``.  That bound is the tail estimate.
    """
    cfg = _coerce(cfg)
    if n < 0:
        raise DomainError("depth must be non-negative")
    if s.is_multiple_of(180):
        raise PoleError(f"arc from sine degenerates at {s} (sin s = 0)", where="Sin s")
    head = hp_sin(s, cfg)
    terms = [Term(0, f"Sin {format_angle(s)}", head, s)]
    value = head
    for k in range(1, n + 1):
        a = s / 2**k
        f = hp_sec(a, cfg)
        terms.append(Term(k, f"Sec {format_angle(a)}", f, a))
        value = value * f
    arc = hp_radians(s, cfg)
    x = arc / 2**n
    bound = _upward(abs(arc) * x * x / 6, cfg)
    if arc.sign() < 0:
        bound = -bound
    return SeriesResult(
        value=value,
        terms=tuple(terms),
        tail_estimate=bound,
        tail_bound_kind="rigorous",
        depth_used=n,
        combine="product",
        identity_residual=value - _pow(2, n, cfg) * hp_sin(s / 2**n, cfg),
        limit=arc,
    )


# ---------------------------------------------------------------------------
# logarithmic form
# ---------------------------------------------------------------------------


def _log_sec_term(s: Angle):
    def term(k, cfg):
        return hp_log10(hp_sec(s / 2**k, cfg))

    return term


def _log10_e(cfg) -> HPReal:
    return 1 / HPReal(cfg.context().ln(Decimal(10)), cfg)


def _check_open_half_turn(s: Angle, what: str):
    if not 0 < s.degrees < 180:
        raise DomainError(f"{what} requires 0d < s < 180d, got {s}")


def log_secant_sum(s: Angle, depth, cfg=None, rounding: str = "exact", tail: str | None = "asymptotic") -> SeriesResult:
    """l sin s + sum_{k=1..n} l sec(s / 2**k) with ``l`` the base-10 log.

    The head ``l sin s`` is omitted at ``s = 90`` where it vanishes.  With
    ``rounding="row_rounded_7dp"`` each row is rounded half-up to seven
    decimals before it is added, as the printed table does.
    """
    cfg = _coerce(cfg)
    _check_open_half_turn(s, "log-secant sum")
    if rounding not in ("exact", "row_rounded_7dp"):
        raise DomainError(f"unknown rounding mode {rounding!r}")
    trunc = _truncation(depth)

    def finish(v: HPReal) -> HPReal:
        return HPReal(round_half_up(v, 7), cfg) if rounding == "row_rounded_7dp" else v

    terms = []
    if s != Angle(90):
        terms.append(Term(0, f"l Sin {format_angle(s)}", finish(hp_log10(hp_sin(s, cfg))), s))
    term = _log_sec_term(s)
    n, converged = _run(terms, trunc, lambda k: [Term(k, f"l Sec {format_angle(s / 2**k)}", finish(term(k, cfg)), s / 2**k)])
    value = HPReal(0, cfg)
    for t in terms:
        value = value + t.value
    finite = hp_log10(_pow(2, n, cfg) * hp_sin(s / 2**n, cfg))
    est, kind = _series_tail(s, 2, n, cfg, tail, "log-secant")
    return SeriesResult(
        value=value,
        terms=tuple(terms),
        tail_estimate=est,
        tail_bound_kind=kind,
        depth_used=n,
        converged=converged,
        identity_residual=value - finite,
        limit=hp_log10(hp_radians(s, cfg)),
    )


def _run(terms: list, trunc: TruncationSpec, rows_at) -> tuple[int, bool]:
    """Append rows for k = 1.. per the truncation rule; return (depth, converged)."""
    if trunc.mode == "fixed_depth":
        for k in range(1, trunc.depth + 1):
            terms.extend(rows_at(k))
        return trunc.depth, True
    eps = trunc.epsilon
    for k in range(1, trunc.cap + 1):
        rows = rows_at(k)
        terms.extend(rows)
        size = abs(sum((r.value.to_decimal() for r in rows), Decimal(0)))
        if size < eps:
            return k, True
    return trunc.cap, False


# ---------------------------------------------------------------------------
# tangent series
# ---------------------------------------------------------------------------


def _tangent_args(s: Angle, spec: RatioSpec, k: int):
    x = s / spec.ratio**k
    return [(offset + sign * x, sign) for offset, sign in spec.offsets]


def _scan_poles(s: Angle, spec: RatioSpec, depth: int):
    if s.is_multiple_of(180):
        raise PoleError(f"cot s has a pole at s = {s}", where="k=0, Cot s")
    radius = spec.pole_free_radius
    for k in range(1, depth + 1):
        if abs(s.degrees) / spec.ratio**k < radius:
            break
        for arg, _ in _tangent_args(s, spec, k):
            if arg.is_odd_multiple_of(90):
                raise PoleError(f"tangent pole at k={k}, argument {arg}", where=f"k={k}, Tag {format_angle(arg)}")


def tangent_term(s: Angle, r, k: int, cfg=None) -> HPReal:
    """The aggregated depth-k term ``r**-k * T_r(s / r**k)``."""
    cfg = _coerce(cfg)
    spec = ratio_spec(r)
    total = HPReal(0, cfg)
    for arg, sign in _tangent_args(s, spec, k):
        t = hp_tan(arg, cfg)
        total = total + t if sign > 0 else total - t
    return total / spec.ratio**k


def _tangent_rows(s: Angle, spec: RatioSpec, k: int, cfg) -> list[Term]:
    rows = []
    scale = spec.ratio**k
    for arg, sign in _tangent_args(s, spec, k):
        v = hp_tan(arg, cfg) / scale
        label = f"{'+' if sign > 0 else '-'}1/{scale} Tag {format_angle(arg)}"
        rows.append(Term(k, label, v if sign > 0 else -v, arg))
    return rows


def telescoped_value(s: Angle, r, n: int, cfg=None) -> HPReal:
    """Closed form of the depth-n partial sum: ``r**-n cot(s / r**n)``."""
    cfg = _coerce(cfg)
    r = ratio_spec(r).ratio
    return hp_cot(s / r**n, cfg) / r**n


def tangent_series(s: Angle, r, depth, cfg=None, tail: str | None = "asymptotic") -> SeriesResult:
    """cot s + sum_{k=1..n} r**-k T_r(s / r**k), converging to 1 / s (radians).

    ``depth`` is an integer or a :class:`TruncationSpec`.  Poles are scanned
    on the exact angles before any term is evaluated.
    """
    cfg = _coerce(cfg)
    spec = ratio_spec(r)
    trunc = _truncation(depth)
    _scan_poles(s, spec, trunc.depth if trunc.mode == "fixed_depth" else trunc.cap)
    terms = [Term(0, f"+Cot {format_angle(s)}", hp_cot(s, cfg), s)]
    n, converged = _run(terms, trunc, lambda k: _tangent_rows(s, spec, k, cfg))
    value = HPReal(0, cfg)
    for t in terms:
        value = value + t.value
    est, kind = _series_tail(s, spec, n, cfg, tail, "tangent")
    return SeriesResult(
        value=value,
        terms=tuple(terms),
        tail_estimate=est,
        tail_bound_kind=kind,
        depth_used=n,
        converged=converged,
        identity_residual=value - telescoped_value(s, spec, n, cfg),
        limit=1 / hp_radians(s, cfg),
    )


# ---------------------------------------------------------------------------
# squared secants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SecantSquaredResult:
    series: SeriesResult
    limit: HPReal
    finite_identity: IdentityReport

    @property
    def lhs(self) -> HPReal:
        return self.series.value

    @property
    def rhs(self) -> HPReal:
        return self.limit


def _sec_sq_term(s: Angle):
    def term(k, cfg):
        return hp_sec(s / 2**k, cfg) ** 2 / 4**k

    return term


def secant_squared_series(s: Angle, n: int, cfg=None, tail: str | None = "asymptotic") -> SecantSquaredResult:
    """sum_{k=1..n} 4**-k sec^2(s / 2**k) against 1/sin^2 s - 1/s^2.

    ``finite_identity`` compares the partial sum with its exact closed form
    ``1/sin^2 s - 4**-n / sin^2(s / 2**n)``.
    """
    cfg = _coerce(cfg)
    _check_open_half_turn(s, "secant-squared series")
    term = _sec_sq_term(s)
    terms = [Term(k, f"1/{4**k} Sec^2 {format_angle(s / 2**k)}", term(k, cfg), s / 2**k) for k in range(1, n + 1)]
    value = HPReal(0, cfg)
    for t in terms:
        value = value + t.value
    inv_sin_sq = 1 / hp_sin(s, cfg) ** 2
    finite = inv_sin_sq - 1 / (hp_sin(s / 2**n, cfg) ** 2 * 4**n)
    arc = hp_radians(s, cfg)
    limit = inv_sin_sq - 1 / (arc * arc)
    est, kind = _series_tail(s, 2, n, cfg, tail, "secant-squared")
    series = SeriesResult(
        value=value,
        terms=tuple(terms),
        tail_estimate=est,
        tail_bound_kind=kind,
        depth_used=n,
        identity_residual=value - finite,
        limit=limit,
    )
    # both sides are differences of terms as large as 1/sin^2 s, so the
    # tolerance scales with it for small arcs
    tol = identity_tolerance(cfg) * max(_one(cfg), inv_sin_sq)
    return SecantSquaredResult(series, limit, make_report("secant-squared-finite", value, finite, cfg, tol))


# ---------------------------------------------------------------------------
# ternary products
# ---------------------------------------------------------------------------


def ternary_sin_product(s: Angle, n: int, cfg=None) -> HPReal:
    """3**n sin(s / 3**n) prod_{k=1..n} (1 - 4/3 sin^2(s / 3**k)); equals sin s."""
    cfg = _coerce(cfg)
    if n < 0:
        raise DomainError("depth must be non-negative")
    value = _pow(3, n, cfg) * hp_sin(s / 3**n, cfg)
    for k in range(1, n + 1):
        sk = hp_sin(s / 3**k, cfg)
        value = value * (1 - Fraction(4, 3) * (sk * sk))
    return value


def ternary_secant_product(s: Angle, n: int, cfg=None) -> HPReal:
    """prod_{k=1..n} 3/4 sec(30 + s/3**k) sec(30 - s/3**k), tending to s / sin s."""
    cfg = _coerce(cfg)
    if n < 0:
        raise DomainError("depth must be non-negative")
    thirty = Angle(30)
    for k in range(1, n + 1):
        for arg in (thirty + s / 3**k, thirty - s / 3**k):
            if arg.is_odd_multiple_of(90):
                raise PoleError(f"secant pole at k={k}, argument {arg}", where=f"k={k}, Sec {format_angle(arg)}")
    value = _one(cfg)
    for k in range(1, n + 1):
        x = s / 3**k
        value = value * Fraction(3, 4) * hp_sec(thirty + x, cfg) * hp_sec(thirty - x, cfg)
    return value


# ---------------------------------------------------------------------------
# tails
# ---------------------------------------------------------------------------


def _asymptotic(s: Angle, spec: RatioSpec, n: int, cfg, series: str) -> HPReal:
    arc = hp_radians(s, cfg)
    r = spec.ratio
    if series == "tangent":
        c = HPReal(0, cfg)
        for offset, _ in spec.offsets:
            c = c + hp_sec(offset, cfg) ** 2
        return arc * c / (HPReal(r**2 - 1, cfg) * r ** (2 * n))
    if series == "log-secant":
        return arc * arc * _log10_e(cfg) / (HPReal(6, cfg) * 4**n)
    if series == "secant-squared":
        # sum_{k>n} 4**-k (1 + x_k**2), x_k = s / 2**k
        return HPReal(1, cfg) / (3 * 4**n) + arc * arc / (15 * 16**n)
    raise DomainError(f"unknown series {series!r}")


def _rigorous(s: Angle, spec: RatioSpec, n: int, cfg, series: str) -> HPReal:
    if series == "tangent":
        return _continuation(lambda k, c: tangent_term(s, spec, k, c), n + 1, spec.ratio**2, cfg)
    if series == "log-secant":
        return _continuation(_log_sec_term(s), n + 1, 4, cfg)
    if series == "secant-squared":
        return _continuation(_sec_sq_term(s), n + 1, 4, cfg)
    raise DomainError(f"unknown series {series!r}")


def tail_estimate(s: Angle, r, n: int, cfg=None, kind: str = "asymptotic", series: str = "tangent") -> tuple[HPReal, str]:
    """Estimate the sum of every term beyond depth ``n``.

    ``series`` is ``"tangent"`` (any ratio), ``"log-secant"`` or
    ``"secant-squared"`` (ratio 2).  Requires ``|s| / r**n < 0.2`` radians.
    """
    cfg = _coerce(cfg)
    spec = ratio_spec(r)
    if series != "tangent" and spec.ratio != 2:
        raise DomainError(f"{series} series only exists for ratio 2")
    arc = abs(hp_radians(s, cfg))
    if not arc / spec.ratio**n < ASYMPTOTIC_LIMIT:
        raise DomainError(f"tail estimate needs |s| / r^n < 0.2 rad, got {(arc / spec.ratio**n).rounded(6)}")
    if kind == "asymptotic":
        return _asymptotic(s, spec, n, cfg, series), kind
    if kind == "rigorous":
        return _rigorous(s, spec, n, cfg, series), kind
    raise DomainError(f"unknown tail kind {kind!r}")


def _series_tail(s, r, n, cfg, kind, series):
    """Tail for a SeriesResult; falls back to continuation for shallow depths."""
    if kind is None:
        return None, None
    spec = ratio_spec(r)
    arc = abs(hp_radians(s, cfg))
    if kind == "asymptotic" and not arc / spec.ratio**n < ASYMPTOTIC_LIMIT:
        kind = "rigorous"
    if kind == "rigorous":
        return _rigorous(s, spec, n, cfg, series), kind
    return _asymptotic(s, spec, n, cfg, series), kind
