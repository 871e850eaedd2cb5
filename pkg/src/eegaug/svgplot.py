"""Minimal self-contained SVG line charts (no plotting dependency).

Emits deterministic text: fixed float formatting, no timestamps, so charts
are byte-identical across runs with identical inputs.  Supports solid and
dashed polylines, axes with tick labels, a title and a simple legend --
enough for the sigma-sweep accuracy chart and ROC curves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

WIDTH, HEIGHT = 640, 420
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 30, 40, 55

PALETTE = ["#1f6fb4", "#d55e00", "#2a9d5c", "#8856a7", "#b2182b", "#666666"]


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _fmt_tick(v: float) -> str:
    if v != 0 and (abs(v) < 0.01 or abs(v) >= 10000):
        return f"{v:.0e}"
    return f"{v:g}"


@dataclass
class Series:
    name: str
    xs: list[float]
    ys: list[float]
    dashed: bool = False
    color: str | None = None


@dataclass
class LineChart:
    title: str
    x_label: str
    y_label: str
    series: list[Series] = field(default_factory=list)
    log_x: bool = False
    y_min: float | None = None
    y_max: float | None = None

    def add(self, name, xs, ys, dashed=False, color=None):
        self.series.append(Series(name, list(xs), list(ys), dashed, color))

    def _x_transform(self, x: float) -> float:
        return math.log10(x) if self.log_x else x

    def render(self) -> str:
        pts = [
            (self._x_transform(x), y)
            for s in self.series
            for x, y in zip(s.xs, s.ys)
        ]
        if not pts:
            raise ValueError("cannot render a chart with no data")
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        x_lo, x_hi = min(xs), max(xs)
        y_lo = min(ys) if self.y_min is None else self.y_min
        y_hi = max(ys) if self.y_max is None else self.y_max
        if x_hi == x_lo:
            x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
        if y_hi == y_lo:
            y_lo, y_hi = y_lo - 0.5, y_hi + 0.5

        plot_w = WIDTH - MARGIN_L - MARGIN_R
        plot_h = HEIGHT - MARGIN_T - MARGIN_B

        def px(x):
            return MARGIN_L + (self._x_transform(x) - x_lo) / (x_hi - x_lo) * plot_w

        def py(y):
            return MARGIN_T + (y_hi - y) / (y_hi - y_lo) * plot_h

        out = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
            f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
            f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
            f'<text x="{WIDTH / 2:.0f}" y="24" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15">{self.title}</text>',
        ]

        # Axes.
        x0, y0 = MARGIN_L, HEIGHT - MARGIN_B
        out.append(
            f'<line x1="{x0}" y1="{y0}" x2="{WIDTH - MARGIN_R}" y2="{y0}" '
            'stroke="black" stroke-width="1"/>'
        )
        out.append(
            f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{MARGIN_T}" '
            'stroke="black" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{MARGIN_L + plot_w / 2:.0f}" y="{HEIGHT - 12}" '
            'text-anchor="middle" font-family="sans-serif" font-size="12">'
            f"{self.x_label}</text>"
        )
        out.append(
            f'<text x="18" y="{MARGIN_T + plot_h / 2:.0f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12" '
            f'transform="rotate(-90 18 {MARGIN_T + plot_h / 2:.0f})">'
            f"{self.y_label}</text>"
        )

        # Ticks: x at series points (log grids) or 5 linear divisions.
        if self.log_x:
            tick_xs = sorted({x for s in self.series for x in s.xs if x > 0})
        else:
            tick_xs = [x_lo + i * (x_hi - x_lo) / 4 for i in range(5)]
        for tx in tick_xs:
            x = px(tx) if self.log_x else MARGIN_L + (tx - x_lo) / (x_hi - x_lo) * plot_w
            out.append(
                f'<line x1="{_fmt(x)}" y1="{y0}" x2="{_fmt(x)}" y2="{y0 + 5}" '
                'stroke="black" stroke-width="1"/>'
            )
            out.append(
                f'<text x="{_fmt(x)}" y="{y0 + 18}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="10">{_fmt_tick(tx)}</text>'
            )
        for i in range(5):
            ty = y_lo + i * (y_hi - y_lo) / 4
            y = py(ty)
            out.append(
                f'<line x1="{x0 - 5}" y1="{_fmt(y)}" x2="{x0}" y2="{_fmt(y)}" '
                'stroke="black" stroke-width="1"/>'
            )
            out.append(
                f'<text x="{x0 - 8}" y="{_fmt(y + 3)}" text-anchor="end" '
                f'font-family="sans-serif" font-size="10">{_fmt_tick(ty)}</text>'
            )

        # Series polylines and legend.
        for i, s in enumerate(self.series):
            color = s.color or PALETTE[i % len(PALETTE)]
            dash = ' stroke-dasharray="7,4"' if s.dashed else ""
            points = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in zip(s.xs, s.ys))
            out.append(
                f'<polyline fill="none" stroke="{color}" stroke-width="1.6"'
                f'{dash} points="{points}"/>'
            )
            ly = MARGIN_T + 14 + 16 * i
            lx = WIDTH - MARGIN_R - 150
            out.append(
                f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 26}" y2="{ly - 4}" '
                f'stroke="{color}" stroke-width="1.6"{dash}/>'
            )
            out.append(
                f'<text x="{lx + 32}" y="{ly}" font-family="sans-serif" '
                f'font-size="11">{s.name}</text>'
            )

        out.append("</svg>")
        return "\n".join(out) + "\n"

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.render())
