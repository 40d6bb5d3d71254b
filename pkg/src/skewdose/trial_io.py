"""Dataset ingestion, per-dose summaries and text/SVG emission.

Two CSV shapes are understood:

* raw long format, header ``dose,value``, one observation per row --
  unequal cohort sizes are fine, doses are compared exactly (a dose is a
  design choice, not a measurement, so no epsilon merging);
* summary format, header ``dose,mean,sd,skew[,n]`` -- for trials where
  only per-dose statistics are available.

Raw observations round-trip exactly: the long-format emitter prints 17
significant digits, which is lossless for binary doubles.  Summary
emission uses 6 significant digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from . import skew_normal
from .errors import (
    DegenerateCohort,
    DegenerateSample,
    DomainError,
    EmptyInput,
    NegativeDose,
    ParseError,
)

_RAW_HEADER = "dose,value"
_SUMMARY_FIELDS = ("dose", "mean", "sd", "skew")


@dataclass(frozen=True)
class DoseCohort:
    """All effect observations collected at one dose."""

    dose: float
    observations: tuple[float, ...]

    def __post_init__(self):
        if not math.isfinite(self.dose) or self.dose < 0.0:
            raise DomainError(f"dose must be finite and >= 0, got {self.dose!r}")
        if len(self.observations) == 0:
            raise DomainError("a cohort needs at least one observation")


@dataclass(frozen=True)
class SummaryRow:
    """Per-dose mean, standard deviation and skewness (1/n normalized)."""

    dose: float
    mean_hat: float
    sd_hat: float
    skew_hat: float
    n: int


def _decode(data: "str | bytes") -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(1, f"input is not UTF-8: {exc}") from exc
    return data


def _parse_number(text: str, line_no: int, column: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(line_no, f"{column} field {text!r} is not a number") \
            from None
    if not math.isfinite(value):
        raise ParseError(line_no, f"{column} field {text!r} is not finite")
    return value


def _data_lines(text: str, expected_header: str) -> list[tuple[int, str]]:
    lines = text.splitlines()
    if not lines or lines[0].strip() == "":
        raise ParseError(1, f"expected header {expected_header!r}")
    if lines[0].strip() != expected_header:
        raise ParseError(1, f"expected header {expected_header!r}, "
                            f"got {lines[0].strip()!r}")
    rows = [(i + 1, line) for i, line in enumerate(lines)
            if i > 0 and line.strip() != ""]
    if not rows:
        raise EmptyInput("no data rows after the header")
    return rows


def parse_csv(data: "str | bytes") -> list[DoseCohort]:
    """Parse raw long-format observations into cohorts, sorted by dose."""
    text = _decode(data)
    by_dose: dict[float, list[float]] = {}
    for line_no, line in _data_lines(text, _RAW_HEADER):
        fields = line.strip().split(",")
        if len(fields) != 2:
            raise ParseError(line_no, f"expected 2 fields, got {len(fields)}")
        dose = _parse_number(fields[0], line_no, "dose")
        if dose < 0.0:
            raise NegativeDose(line_no)
        value = _parse_number(fields[1], line_no, "value")
        by_dose.setdefault(dose, []).append(value)
    return [DoseCohort(dose=d, observations=tuple(by_dose[d]))
            for d in sorted(by_dose)]


def parse_summary_csv(data: "str | bytes") -> list[SummaryRow]:
    """Parse per-dose summary rows (header dose,mean,sd,skew[,n])."""
    text = _decode(data)
    lines = text.splitlines()
    header = lines[0].strip() if lines else ""
    with_n = header == ",".join(_SUMMARY_FIELDS + ("n",))
    expected = header if with_n else ",".join(_SUMMARY_FIELDS)
    rows = []
    for line_no, line in _data_lines(text, expected):
        fields = line.strip().split(",")
        want = 5 if with_n else 4
        if len(fields) != want:
            raise ParseError(line_no, f"expected {want} fields, got {len(fields)}")
        dose = _parse_number(fields[0], line_no, "dose")
        if dose < 0.0:
            raise NegativeDose(line_no)
        mean = _parse_number(fields[1], line_no, "mean")
        sd = _parse_number(fields[2], line_no, "sd")
        skew = _parse_number(fields[3], line_no, "skew")
        if sd <= 0.0:
            raise ParseError(line_no, f"sd must be > 0, got {sd!r}")
        n = 0
        if with_n:
            try:
                n = int(fields[4])
            except ValueError:
                raise ParseError(line_no, f"n field {fields[4]!r} is not an "
                                          "integer") from None
        rows.append(SummaryRow(dose=dose, mean_hat=mean, sd_hat=sd,
                               skew_hat=skew, n=n))
    rows.sort(key=lambda r: r.dose)
    return rows


def summarize(cohorts: Sequence[DoseCohort]) -> list[SummaryRow]:
    """Per-dose plug-in mean, sd and skewness (1/n normalization)."""
    rows = []
    for cohort in cohorts:
        try:
            moments = skew_normal.estimate_moments(cohort.observations)
        except DegenerateSample as exc:
            raise DegenerateCohort(cohort.dose) from exc
        rows.append(SummaryRow(dose=cohort.dose, mean_hat=moments.mu,
                               sd_hat=moments.sigma, skew_hat=moments.gamma,
                               n=len(cohort.observations)))
    return rows


def emit_observations(cohorts: Sequence[DoseCohort]) -> str:
    """Long-format CSV at 17 significant digits (lossless round trip)."""
    lines = [_RAW_HEADER]
    for cohort in cohorts:
        for value in cohort.observations:
            lines.append(f"{cohort.dose:.17g},{value:.17g}")
    return "\n".join(lines) + "\n"


def emit_summary(rows: Sequence[SummaryRow]) -> str:
    """Summary CSV at 6 significant digits."""
    lines = ["dose,mean,sd,skew,n"]
    for row in rows:
        lines.append(f"{row.dose:.6g},{row.mean_hat:.6g},{row.sd_hat:.6g},"
                     f"{row.skew_hat:.6g},{row.n}")
    return "\n".join(lines) + "\n"


def _curve_grid(interval: tuple[float, float], steps: int) -> list[float]:
    lo, hi = interval
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if steps == 1:
        return [0.5 * (lo + hi)]
    step = (hi - lo) / (steps - 1)
    grid = [lo + i * step for i in range(steps)]
    grid[-1] = hi
    return grid


def emit_curve_points(curve: Callable[[float], float],
                      interval: tuple[float, float], steps: int) -> str:
    """Uniform-grid curve samples as x,y CSV (midpoint only for steps=1)."""
    lines = ["x,y"]
    for x in _curve_grid(interval, steps):
        lines.append(f"{x:.17g},{curve(x):.17g}")
    return "\n".join(lines) + "\n"


# fixed SVG geometry
_SVG_W, _SVG_H = 800, 500
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 65, 20, 20, 45
_TICKS = 5


def emit_curve_svg(curve: Callable[[float], float],
                   interval: tuple[float, float], steps: int) -> str:
    """Static SVG polyline of the curve: 800x500, linear axes, ticks."""
    xs = _curve_grid(interval, max(steps, 2))
    ys = [curve(x) for x in xs]
    x_lo, x_hi = xs[0], xs[-1]
    y_lo, y_hi = min(ys), max(ys)
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1.0, y_hi + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    plot_w = _SVG_W - _MARGIN_L - _MARGIN_R
    plot_h = _SVG_H - _MARGIN_T - _MARGIN_B

    def px(x: float) -> float:
        return _MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return _MARGIN_T + (y_hi - y) / (y_hi - y_lo) * plot_h

    points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {_SVG_W} {_SVG_H}">',
        f'<rect width="{_SVG_W}" height="{_SVG_H}" fill="white"/>',
        f'<line x1="{_MARGIN_L}" y1="{_MARGIN_T + plot_h}" '
        f'x2="{_MARGIN_L + plot_w}" y2="{_MARGIN_T + plot_h}" '
        f'stroke="black" stroke-width="1"/>',
        f'<line x1="{_MARGIN_L}" y1="{_MARGIN_T}" '
        f'x2="{_MARGIN_L}" y2="{_MARGIN_T + plot_h}" '
        f'stroke="black" stroke-width="1"/>',
    ]
    for i in range(_TICKS):
        frac = i / (_TICKS - 1)
        tx = x_lo + frac * (x_hi - x_lo)
        ty = y_lo + frac * (y_hi - y_lo)
        x_pix = px(tx)
        y_pix = py(ty)
        parts.append(f'<line x1="{x_pix:.2f}" y1="{_MARGIN_T + plot_h}" '
                     f'x2="{x_pix:.2f}" y2="{_MARGIN_T + plot_h + 5}" '
                     f'stroke="black" stroke-width="1"/>')
        parts.append(f'<text x="{x_pix:.2f}" y="{_MARGIN_T + plot_h + 20}" '
                     f'font-size="12" text-anchor="middle">{tx:.4g}</text>')
        parts.append(f'<line x1="{_MARGIN_L - 5}" y1="{y_pix:.2f}" '
                     f'x2="{_MARGIN_L}" y2="{y_pix:.2f}" '
                     f'stroke="black" stroke-width="1"/>')
        parts.append(f'<text x="{_MARGIN_L - 8}" y="{y_pix + 4:.2f}" '
                     f'font-size="12" text-anchor="end">{ty:.4g}</text>')
    parts.append(f'<polyline fill="none" stroke="#1f77b4" stroke-width="2" '
                 f'points="{points}"/>')
    parts.append('</svg>')
    return "\n".join(parts) + "\n"
