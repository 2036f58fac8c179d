"""Convergence measurements for the ratio-r tangent series."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Context, Decimal

from .angles import Angle
from .precision import HPReal, _coerce, hp_radians
from .series import ratio_spec, tangent_series, tangent_term

__all__ = ["ConvergenceRow", "convergence_rows", "fit_decay", "term_ratios"]

_FIT = Context(prec=30)


@dataclass(frozen=True)
class ConvergenceRow:
    ratio: int
    depth: int
    abs_error: HPReal


def convergence_rows(ratios, arc: Angle, max_depth: int, cfg=None) -> list[ConvergenceRow]:
    """|partial sum at depth n - 1/s| for n = 0..max_depth and each ratio."""
    cfg = _coerce(cfg)
    target = 1 / hp_radians(arc, cfg)
    rows = []
    for r in ratios:
        spec = ratio_spec(r)
        res = tangent_series(arc, spec, max_depth, cfg, tail=None)
        partial = HPReal(0, cfg)
        for depth, chunk in enumerate(res.by_depth()):
            partial = partial + chunk
            rows.append(ConvergenceRow(spec.ratio, depth, abs(partial - target)))
    return rows


def fit_decay(rows: list[ConvergenceRow], floor: HPReal | None = None) -> Decimal | None:
    """Least-squares decimal digits gained per depth step, from depth 1 on.

    Errors at or below ``floor`` (default ``10**(5 - P)``) are rounding
    noise and are left out.  Returns None with fewer than two usable points.
    """
    pts = []
    for row in rows:
        if row.depth < 1 or row.abs_error.is_zero():
            continue
        if floor is None:
            floor = HPReal(Decimal(1).scaleb(5 - row.abs_error.precision), row.abs_error.config)
        if row.abs_error <= floor:
            continue
        pts.append((Decimal(row.depth), _FIT.log10(row.abs_error.to_decimal())))
    if len(pts) < 2:
        return None
    n = Decimal(len(pts))
    mx = _FIT.divide(sum((x for x, _ in pts), Decimal(0)), n)
    my = _FIT.divide(sum((y for _, y in pts), Decimal(0)), n)
    sxy = sum((_FIT.multiply(x - mx, y - my) for x, y in pts), Decimal(0))
    sxx = sum((_FIT.multiply(x - mx, x - mx) for x, _ in pts), Decimal(0))
    return -_FIT.divide(sxy, sxx)


def term_ratios(r, arc: Angle, depths, cfg=None) -> list[tuple[int, HPReal]]:
    """|t_(k+1)| / |t_k| for each k in ``depths`` (aggregated depth-k terms)."""
    cfg = _coerce(cfg)
    out = []
    for k in depths:
        a = tangent_term(arc, r, k, cfg)
        b = tangent_term(arc, r, k + 1, cfg)
        out.append((k, abs(b) / abs(a)))
    return out
