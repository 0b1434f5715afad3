"""Deterministic CSV / JSON / SVG emission for reports and fields.

Reports are flat key -> value mappings, written either as a single JSON
object or as ``key,value`` CSV rows carrying the same values; floats go
through ``repr`` (shortest round-trip, 17 significant digits), so the
two formats parse back to identical doubles.  Field frames use the
``x,t,re,im`` row schema, one file per frame.  Nothing here embeds
timestamps: byte-identical reruns are part of the contract.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path


def format_number(value) -> str:
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def report_json_text(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def report_csv_text(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "value"])
    for key in sorted(report):
        writer.writerow([key, format_number(report[key])])
    return buf.getvalue()


def parse_report_csv(text: str) -> dict:
    """Inverse of ``report_csv_text`` with numeric values restored."""
    out = {}
    rows = list(csv.reader(io.StringIO(text)))
    for key, raw in rows[1:]:
        try:
            value = int(raw)
        except ValueError:
            try:
                value = float(raw)
            except ValueError:
                value = raw
        out[key] = value
    return out


def frame_csv_text(xs, t: float, values) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "t", "re", "im"])
    for x, v in zip(xs, values):
        writer.writerow([repr(float(x)), repr(float(t)),
                         repr(float(v.real)), repr(float(v.imag))])
    return buf.getvalue()


def frame_filename(step: int) -> str:
    return f"frame_{step:06d}.csv"


# ---------------------------------------------------------------------------
# SVG line plots
# ---------------------------------------------------------------------------

_SVG_COLORS = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728")
_W, _H = 720, 420
_ML, _MR, _MT, _MB = 60, 20, 30, 40


def _ticks(lo: float, hi: float, n: int = 5):
    if hi == lo:
        hi = lo + 1.0
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def svg_line_plot(xs, series, title: str, xlabel: str = "x") -> str:
    """Polyline plot of one or more real-valued series against xs."""
    xs = [float(x) for x in xs]
    lo_x, hi_x = min(xs), max(xs)
    values = [float(v) for _, ys in series for v in ys]
    lo_y, hi_y = min(values), max(values)
    if not (math.isfinite(lo_y) and math.isfinite(hi_y)):
        raise ValueError("cannot plot non-finite values")
    if hi_y == lo_y:
        hi_y = lo_y + 1.0
        lo_y = lo_y - 1.0
    pad = 0.05 * (hi_y - lo_y)
    lo_y -= pad
    hi_y += pad

    def px(x):
        return _ML + (x - lo_x) / (hi_x - lo_x) * (_W - _ML - _MR)

    def py(y):
        return _H - _MB - (y - lo_y) / (hi_y - lo_y) * (_H - _MT - _MB)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2:.1f}" y="18" text-anchor="middle" '
        f'font-family="monospace" font-size="13">{title}</text>',
        f'<rect x="{_ML}" y="{_MT}" width="{_W - _ML - _MR}" '
        f'height="{_H - _MT - _MB}" fill="none" stroke="#444"/>',
    ]
    for tx in _ticks(lo_x, hi_x):
        parts.append(
            f'<text x="{px(tx):.1f}" y="{_H - _MB + 16}" text-anchor="middle" '
            f'font-family="monospace" font-size="10">{tx:.3g}</text>'
        )
    for ty in _ticks(lo_y, hi_y):
        parts.append(
            f'<text x="{_ML - 6}" y="{py(ty):.1f}" text-anchor="end" '
            f'font-family="monospace" font-size="10">{ty:.3g}</text>'
        )
    parts.append(
        f'<text x="{_W / 2:.1f}" y="{_H - 8}" text-anchor="middle" '
        f'font-family="monospace" font-size="11">{xlabel}</text>'
    )
    for i, (label, ys) in enumerate(series):
        color = _SVG_COLORS[i % len(_SVG_COLORS)]
        points = " ".join(f"{px(x):.2f},{py(float(y)):.2f}" for x, y in zip(xs, ys))
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{points}"/>'
        )
        parts.append(
            f'<text x="{_W - _MR - 8}" y="{_MT + 16 + 14 * i}" text-anchor="end" '
            f'font-family="monospace" font-size="11" fill="{color}">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def field_svg_text(xs, t: float, values) -> str:
    series = [
        ("Re", [v.real for v in values]),
        ("Im", [v.imag for v in values]),
        ("|value|", [abs(v) for v in values]),
    ]
    return svg_line_plot(xs, series, title=f"field at t={t:.6g}")


def write_text(path: Path | str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
