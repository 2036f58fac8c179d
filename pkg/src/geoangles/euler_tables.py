"""Seven-place reproductions of the two historical pi computations.

Both tables follow the same pipeline: every printed row is an exact series
term rounded half-up to seven decimals; the tail row is whatever closes
the rounded rows onto the seven-place value of the full sum (exact head
plus rigorous tail); the subtotal is the sum of the rounded rows.  The
log-secant table then adds the seven-place ``l 2`` and takes the
antilogarithm, truncated to seven places.

Golden fixtures are stored exactly as printed, with comma decimal
separators, one ``<label>;<value>`` row per line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal
from importlib import resources

from .angles import Angle, format_angle
from .precision import HPReal, _coerce, hp_log10, hp_pi, hp_pow10, round_down, round_half_up
from .series import log_secant_sum, tangent_series

__all__ = [
    "TableRow",
    "EulerTable",
    "log_secant_table",
    "tangent_table",
    "load_fixture",
    "golden_diff",
    "normalize",
    "TABLES",
]


def _fmt(d: Decimal) -> str:
    return format(d, "f")


@dataclass(frozen=True)
class TableRow:
    label: str
    value_7dp: str
    kind: str
    historical_label: str = ""

    def __post_init__(self):
        if self.kind not in ("term", "tail", "subtotal", "constant", "result"):
            raise ValueError(f"unknown row kind {self.kind!r}")
        whole, _, frac = self.value_7dp.partition(".")
        if len(frac) != 7 or Decimal(self.value_7dp) != Decimal(f"{whole}.{frac}"):
            raise ValueError(f"row value must carry exactly 7 decimals: {self.value_7dp!r}")

    @property
    def value(self) -> Decimal:
        return Decimal(self.value_7dp)


@dataclass(frozen=True)
class EulerTable:
    name: str
    rows: tuple[TableRow, ...]
    final_pi: str
    final_display: str
    historical_final: str
    diagnostics: tuple[str, ...] = field(default=())

    def row(self, kind: str) -> TableRow:
        return next(r for r in self.rows if r.kind == kind)

    def lines(self, euler_style: bool = False) -> list[str]:
        """``<label>;<value>`` lines; historical mode uses glyphs and commas."""
        out = []
        for r in self.rows:
            if euler_style:
                out.append(f"{r.historical_label};{r.value_7dp.replace('.', ',')}")
            else:
                out.append(f"{r.label};{r.value_7dp}")
        out.append(f"π;{self.historical_final}" if euler_style else f"pi;{self.final_display}")
        return out

    def to_json(self) -> dict:
        return {
            "table": self.name,
            "rows": [{"label": r.label, "value": r.value_7dp, "kind": r.kind} for r in self.rows],
            "subtotal": self.row("subtotal").value_7dp,
            "final_pi": self.final_pi,
            "final_display": self.final_display,
            "diagnostics": list(self.diagnostics),
        }


def _closing_tail(exact_total: HPReal, rounded_rows: list[Decimal]) -> tuple[Decimal, Decimal]:
    """Tail row that lands the rounded rows on the 7-place total; returns (tail, total)."""
    total = round_half_up(exact_total, 7)
    return total - sum(rounded_rows, Decimal(0)), total


def log_secant_table(cfg=None) -> EulerTable:
    cfg = _coerce(cfg)
    s = Angle(90)
    exact = log_secant_sum(s, 8, cfg, rounding="exact", tail="rigorous")
    rounded = log_secant_sum(s, 8, cfg, rounding="row_rounded_7dp", tail=None)
    rows = []
    values = []
    for t in rounded.terms:
        v = round_half_up(t.value, 7)
        values.append(v)
        rows.append(TableRow(t.label, _fmt(v), "term", f"l Sec {format_angle(t.angle, 'historical')}"))
    exact_total = exact.value + exact.tail_estimate
    tail, subtotal = _closing_tail(exact_total, values)
    rows.append(TableRow("other terms", _fmt(tail), "tail", "other terms"))
    rows.append(TableRow("l pi/2", _fmt(subtotal), "subtotal", "l π/2"))
    log2 = round_half_up(hp_log10(2, cfg), 7)
    rows.append(TableRow("l 2", _fmt(log2), "constant", "l 2"))
    log_pi = subtotal + log2
    rows.append(TableRow("l pi", _fmt(log_pi), "result", "l π"))

    antilog = hp_pow10(HPReal(log_pi, cfg))
    final = round_down(antilog, 7)
    reference = round_half_up(hp_pi(cfg), 7)
    direct_tail = round_half_up(exact.tail_estimate, 7)
    diagnostics = (
        f"antilog 10^{_fmt(log_pi)} = {antilog.rounded(12)}, truncated to 7 places: {_fmt(final)}",
        f"rounding the antilog half-up would give {_fmt(round_half_up(antilog, 7))}",
        f"reference pi to 7 places is {_fmt(reference)}; the table's last place differs "
        f"because l pi is carried to 7 places (exact l pi = {hp_log10(hp_pi(cfg)).rounded(12)})",
        f"rigorous remainder after 8 rows = {exact.tail_estimate.rounded(10)} "
        f"(rounds to {_fmt(direct_tail)})",
    )
    return EulerTable(
        name="log-secant",
        rows=tuple(rows),
        final_pi=_fmt(final),
        final_display=_fmt(final),
        historical_final=_fmt(final).replace(".", ","),
        diagnostics=diagnostics,
    )


def tangent_table(cfg=None) -> EulerTable:
    cfg = _coerce(cfg)
    s = Angle(90)
    exact = tangent_series(s, 2, 6, cfg, tail="rigorous")
    rows = []
    values = []
    for t in exact.terms[1:]:
        v = round_half_up(t.value, 7)
        values.append(v)
        coeff = t.label[1:].split(" Tag ")[0]
        rows.append(TableRow(t.label.lstrip("+"), _fmt(v), "term", f"{coeff} Tag {format_angle(t.angle, 'historical')}"))
    exact_total = exact.value + exact.tail_estimate
    tail, subtotal = _closing_tail(exact_total, values)
    rows.append(TableRow("for the remaining", _fmt(tail), "tail", "for the remaining"))
    rows.append(TableRow("2/pi", _fmt(subtotal), "subtotal", "2/π"))

    half = subtotal / 2
    pi_value = HPReal(2, cfg) / HPReal(subtotal, cfg)
    display = f"2/{_fmt(subtotal)} = 1/{_fmt(half)}"
    direct_tail = round_half_up(exact.tail_estimate, 7)
    diagnostics = (
        f"1/{_fmt(half)} = {pi_value.rounded(9)} while pi = {hp_pi(cfg).rounded(9)}",
        f"rigorous remainder after 6 rows = {exact.tail_estimate.rounded(10)} "
        f"(rounds to {_fmt(direct_tail)}); the printed tail closes the rounded rows onto 2/pi",
    )
    return EulerTable(
        name="tangent",
        rows=tuple(rows),
        final_pi=_fmt(round_half_up(pi_value, 7)),
        final_display=display,
        historical_final=display.replace(".", ","),
        diagnostics=diagnostics,
    )


TABLES = {"log-secant": log_secant_table, "tangent": tangent_table}

_FIXTURES = {"log-secant": "log_secant_table.txt", "tangent": "tangent_table.txt"}


def load_fixture(which: str) -> list[str]:
    text = resources.files("geoangles").joinpath("data").joinpath(_FIXTURES[which]).read_text(encoding="utf-8")
    return [line for line in text.splitlines() if line.strip()]


def normalize(line: str) -> str:
    """Map the historical decimal comma to a point (labels are untouched)."""
    label, _, value = line.partition(";")
    return f"{label};{value.replace(',', '.')}"


def golden_diff(table: EulerTable, fixture: list[str] | None = None):
    """First mismatch between a table and its fixture as (line, expected, got), else None."""
    expected = [normalize(x) for x in (load_fixture(table.name) if fixture is None else fixture)]
    got = [normalize(x) for x in table.lines(euler_style=True)]
    for i, (e, g) in enumerate(zip(expected, got), start=1):
        if e != g:
            return i, e, g
    if len(expected) != len(got):
        i = min(len(expected), len(got)) + 1
        return i, expected[i - 1] if i <= len(expected) else "<end>", got[i - 1] if i <= len(got) else "<end>"
    return None
