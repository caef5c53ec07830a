"""Minimal SVG writer for scatter plots and polylines.

Each panel gets a fixed pixel box; its data window is the extent of the
data plus a 5% margin (optionally symmetric about the origin).  Numbers are
printed with fixed precision so the output is byte-stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from . import __version__

PANEL = 420
PAD = 36
MARGIN = 0.05


@dataclass
class Series:
    """``kind`` is ``"points"`` or ``"line"``.  Lines break at NaN y values."""

    xy: Sequence[tuple[float, float]]
    kind: str = "points"
    color: str = "#1f4e9c"
    label: str = ""
    radius: float = 2.2


@dataclass
class Panel:
    title: str = ""
    series: list[Series] = field(default_factory=list)
    symmetric: bool = False
    equal_aspect: bool = True
    xlabel: str = ""
    ylabel: str = ""


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _extent(panel: Panel) -> tuple[float, float, float, float]:
    xs = [x for s in panel.series for x, y in s.xy if math.isfinite(x) and math.isfinite(y)]
    ys = [y for s in panel.series for x, y in s.xy if math.isfinite(x) and math.isfinite(y)]
    if not xs:
        xs, ys = [-1.0, 1.0], [-1.0, 1.0]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    if panel.symmetric:
        r = max(abs(x0), abs(x1))
        s = max(abs(y0), abs(y1))
        x0, x1, y0, y1 = -r, r, -s, s
    if panel.equal_aspect:
        r = max(x1 - x0, y1 - y0)
        cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
        x0, x1, y0, y1 = cx - r / 2, cx + r / 2, cy - r / 2, cy + r / 2
    if x1 - x0 == 0:
        x0, x1 = x0 - 1, x1 + 1
    if y1 - y0 == 0:
        y0, y1 = y0 - 1, y1 + 1
    mx, my = MARGIN * (x1 - x0), MARGIN * (y1 - y0)
    return x0 - mx, x1 + mx, y0 - my, y1 + my


def _panel_svg(panel: Panel, ox: float) -> list[str]:
    x0, x1, y0, y1 = _extent(panel)
    inner = PANEL - 2 * PAD

    def tx(x):
        return ox + PAD + (x - x0) / (x1 - x0) * inner

    def ty(y):
        return PAD + (y1 - y) / (y1 - y0) * inner

    out = [
        f'<g class="panel"><rect x="{_fmt(ox + PAD)}" y="{PAD}" width="{inner}" height="{inner}" '
        'fill="none" stroke="#999" stroke-width="0.8"/>'
    ]
    if x0 < 0 < x1:
        out.append(
            f'<line x1="{_fmt(tx(0))}" y1="{PAD}" x2="{_fmt(tx(0))}" y2="{PAD + inner}" stroke="#ccc" stroke-width="0.6"/>'
        )
    if y0 < 0 < y1:
        out.append(
            f'<line x1="{_fmt(ox + PAD)}" y1="{_fmt(ty(0))}" x2="{_fmt(ox + PAD + inner)}" y2="{_fmt(ty(0))}" '
            'stroke="#ccc" stroke-width="0.6"/>'
        )
    if panel.title:
        out.append(
            f'<text x="{_fmt(ox + PANEL / 2)}" y="{PAD - 12}" text-anchor="middle" font-size="13">'
            f"{escape(panel.title)}</text>"
        )
    for label, x, y, anchor in (
        (panel.xlabel, ox + PANEL / 2, PANEL - 8, "middle"),
        (panel.ylabel, ox + 6, PANEL / 2, "start"),
    ):
        if label:
            out.append(f'<text x="{_fmt(x)}" y="{_fmt(y)}" text-anchor="{anchor}" font-size="11">{escape(label)}</text>')
    for ticks, is_x in (((x0, x1), True), ((y0, y1), False)):
        for v in ticks:
            if is_x:
                out.append(
                    f'<text x="{_fmt(tx(v))}" y="{PAD + inner + 14}" text-anchor="middle" font-size="9">{v:.3g}</text>'
                )
            else:
                out.append(f'<text x="{_fmt(ox + PAD - 3)}" y="{_fmt(ty(v))}" text-anchor="end" font-size="9">{v:.3g}</text>')
    legend_y = PAD + 12
    for s in panel.series:
        if s.kind == "points":
            out.append(f'<g fill="{s.color}">')
            for x, y in s.xy:
                if math.isfinite(x) and math.isfinite(y):
                    out.append(f'<circle cx="{_fmt(tx(x))}" cy="{_fmt(ty(y))}" r="{_fmt(s.radius)}"/>')
            out.append("</g>")
        elif s.kind == "line":
            run: list[str] = []
            for x, y in list(s.xy) + [(math.nan, math.nan)]:
                if math.isfinite(x) and math.isfinite(y):
                    run.append(f"{_fmt(tx(x))},{_fmt(ty(y))}")
                    continue
                if len(run) > 1:
                    out.append(
                        f'<polyline points="{" ".join(run)}" fill="none" stroke="{s.color}" stroke-width="1.2"/>'
                    )
                run = []
        else:
            raise ValueError(f"unknown series kind {s.kind!r}")
        if s.label:
            out.append(
                f'<text x="{_fmt(ox + PAD + 6)}" y="{legend_y}" font-size="10" fill="{s.color}">{escape(s.label)}</text>'
            )
            legend_y += 12
    out.append("</g>")
    return out


def render(panels: Sequence[Panel], title: Optional[str] = None) -> str:
    """Panels side by side in one SVG document."""
    width = PANEL * len(panels)
    top = 22 if title else 0
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 {-top} {width} {PANEL + top}" '
        f'width="{width}" height="{PANEL + top}" font-family="sans-serif">',
        f"<!-- hermwron {__version__} -->",
        f'<rect x="0" y="{-top}" width="{width}" height="{PANEL + top}" fill="white"/>',
    ]
    if title:
        lines.append(f'<text x="{width / 2:.1f}" y="-6" text-anchor="middle" font-size="14">{escape(title)}</text>')
    for i, p in enumerate(panels):
        lines.extend(_panel_svg(p, i * PANEL))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
