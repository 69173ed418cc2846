"""Minimal deterministic SVG charts.

Hand-rolled SVG text on a fixed 800x500 canvas: no timestamps, no
generated ids, fixed 2-decimal coordinates, so output is byte-stable
across runs and diffable in tests. Data points are <circle class="pt">,
regression lines <path class="fit">, bars <rect class="bar-*">.
"""

from __future__ import annotations

import math

WIDTH = 800.0
HEIGHT = 500.0
ML, MR, MT, MB = 80.0, 30.0, 50.0, 70.0

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
)


def _f(v: float) -> str:
    return f"{v:.2f}"


def _axis_range(lo: float, hi: float) -> tuple[float, float]:
    if hi <= lo:
        lo, hi = lo - 1.0, hi + 1.0
    pad = 0.06 * (hi - lo)
    return lo - pad, hi + pad


class _Frame:
    """Linear data-to-pixel mapping inside the plot frame."""

    def __init__(self, xlo, xhi, ylo, yhi):
        self.xlo, self.xhi = _axis_range(xlo, xhi)
        self.ylo, self.yhi = _axis_range(ylo, yhi)

    def x(self, v: float) -> float:
        return ML + (v - self.xlo) / (self.xhi - self.xlo) * (WIDTH - ML - MR)

    def y(self, v: float) -> float:
        return HEIGHT - MB - (v - self.ylo) / (self.yhi - self.ylo) * (HEIGHT - MT - MB)


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _frame_svg(frame: _Frame, title: str, xlabel: str, ylabel: str) -> list[str]:
    parts = [
        f'<path class="axis" d="M {_f(ML)} {_f(MT)} L {_f(ML)} {_f(HEIGHT - MB)} '
        f'L {_f(WIDTH - MR)} {_f(HEIGHT - MB)}" fill="none" stroke="#333"/>',
        f'<text class="title" x="{_f(WIDTH / 2)}" y="{_f(MT - 20)}" '
        f'text-anchor="middle" font-size="16">{title}</text>',
        f'<text class="xlabel" x="{_f(WIDTH / 2)}" y="{_f(HEIGHT - 15)}" '
        f'text-anchor="middle" font-size="13">{xlabel}</text>',
        f'<text class="ylabel" x="18" y="{_f(HEIGHT / 2)}" text-anchor="middle" '
        f'font-size="13" transform="rotate(-90 18 {_f(HEIGHT / 2)})">{ylabel}</text>',
    ]
    for v in _ticks(frame.xlo, frame.xhi):
        px = frame.x(v)
        parts.append(
            f'<line class="tick" x1="{_f(px)}" y1="{_f(HEIGHT - MB)}" x2="{_f(px)}" '
            f'y2="{_f(HEIGHT - MB + 5)}" stroke="#333"/>'
        )
        parts.append(
            f'<text class="ticklabel" x="{_f(px)}" y="{_f(HEIGHT - MB + 20)}" '
            f'text-anchor="middle" font-size="11">{v:.4g}</text>'
        )
    for v in _ticks(frame.ylo, frame.yhi):
        py = frame.y(v)
        parts.append(
            f'<line class="tick" x1="{_f(ML - 5)}" y1="{_f(py)}" x2="{_f(ML)}" '
            f'y2="{_f(py)}" stroke="#333"/>'
        )
        parts.append(
            f'<text class="ticklabel" x="{_f(ML - 10)}" y="{_f(py + 4)}" '
            f'text-anchor="end" font-size="11">{v:.4g}</text>'
        )
    return parts


def _document(parts: list[str]) -> str:
    body = "\n".join(parts)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0f}" '
        f'height="{HEIGHT:.0f}" viewBox="0 0 {WIDTH:.0f} {HEIGHT:.0f}">\n'
        f'<rect width="{WIDTH:.0f}" height="{HEIGHT:.0f}" fill="white"/>\n'
        f"{body}\n</svg>\n"
    )


def scatter_fit_svg(
    points: list[tuple[float, float, str]],
    slope: float,
    intercept: float,
    title: str,
    xlabel: str,
    ylabel: str,
) -> str:
    """Scatter of labeled points with one fitted regression line."""
    xs = [p[0] for p in points]
    ys = [p[1] for p in points] + [slope * x + intercept for x in xs]
    frame = _Frame(min(xs), max(xs), min(ys), max(ys))
    parts = _frame_svg(frame, title, xlabel, ylabel)
    x0, x1 = min(xs), max(xs)
    parts.append(
        f'<path class="fit" d="M {_f(frame.x(x0))} {_f(frame.y(slope * x0 + intercept))} '
        f'L {_f(frame.x(x1))} {_f(frame.y(slope * x1 + intercept))}" '
        f'stroke="{PALETTE[1]}" stroke-width="1.5" fill="none"/>'
    )
    for x, y, label in points:
        parts.append(
            f'<circle class="pt" cx="{_f(frame.x(x))}" cy="{_f(frame.y(y))}" r="4" '
            f'fill="{PALETTE[0]}"/>'
        )
        parts.append(
            f'<text class="ptlabel" x="{_f(frame.x(x) + 6)}" y="{_f(frame.y(y) - 6)}" '
            f'font-size="11">{label}</text>'
        )
    return _document(parts)


def dataset_trends_svg(
    series: list[tuple[str, list[tuple[float, float]], float, float]],
    title: str,
    xlabel: str,
    ylabel: str,
) -> str:
    """One scatter + regression line per dataset."""
    xs = [x for _, pts, _, _ in series for x, _ in pts]
    ys = [y for _, pts, _, _ in series for _, y in pts]
    frame = _Frame(min(xs), max(xs), min(ys), max(ys))
    parts = _frame_svg(frame, title, xlabel, ylabel)
    for i, (name, pts, slope, intercept) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        sx = sorted(x for x, _ in pts)
        x0, x1 = sx[0], sx[-1]
        parts.append(
            f'<path class="fit s{i}" d="M {_f(frame.x(x0))} '
            f'{_f(frame.y(slope * x0 + intercept))} L {_f(frame.x(x1))} '
            f'{_f(frame.y(slope * x1 + intercept))}" stroke="{color}" '
            f'stroke-width="1.5" fill="none"/>'
        )
        for x, y in pts:
            parts.append(
                f'<circle class="pt s{i}" cx="{_f(frame.x(x))}" cy="{_f(frame.y(y))}" '
                f'r="3.5" fill="{color}"/>'
            )
        parts.append(
            f'<text class="legend" x="{_f(WIDTH - MR - 150)}" y="{_f(MT + 18 * (i + 1))}" '
            f'font-size="12" fill="{color}">{name}</text>'
        )
    return _document(parts)


def reduction_bars_svg(
    entries: list[tuple[str, float, float]],
    title: str,
    ylabel: str = "reduction factor (log scale)",
) -> str:
    """Paired parameter/latency reduction bars, log10-scaled heights."""
    top = max(max(pr, lr) for _, pr, lr in entries)
    ymax = max(1.0, math.log10(top))
    frame = _Frame(0.0, float(len(entries)), 0.0, ymax)
    parts = _frame_svg(frame, title, "", ylabel)
    slot = (WIDTH - ML - MR) / max(1, len(entries))
    bar_w = slot * 0.3
    base_y = frame.y(0.0)
    for i, (label, pr, lr) in enumerate(entries):
        cx = ML + slot * (i + 0.5)
        for dx, value, cls, color in (
            (-bar_w, pr, "bar-pr", PALETTE[0]),
            (0.0, lr, "bar-lr", PALETTE[4]),
        ):
            h = base_y - frame.y(math.log10(max(1.0, value)))
            parts.append(
                f'<rect class="{cls}" x="{_f(cx + dx)}" y="{_f(base_y - h)}" '
                f'width="{_f(bar_w)}" height="{_f(h)}" fill="{color}"/>'
            )
            parts.append(
                f'<text class="barlabel" x="{_f(cx + dx + bar_w / 2)}" '
                f'y="{_f(base_y - h - 4)}" text-anchor="middle" font-size="10">'
                f"{value:.3g}</text>"
            )
        parts.append(
            f'<text class="catlabel" x="{_f(cx)}" y="{_f(base_y + 18)}" '
            f'text-anchor="middle" font-size="11">{label}</text>'
        )
    parts.append(
        f'<text class="legend" x="{_f(WIDTH - MR - 170)}" y="{_f(MT + 18)}" '
        f'font-size="12" fill="{PALETTE[0]}">parameter reduction</text>'
    )
    parts.append(
        f'<text class="legend" x="{_f(WIDTH - MR - 170)}" y="{_f(MT + 36)}" '
        f'font-size="12" fill="{PALETTE[4]}">latency reduction (MAC proxy)</text>'
    )
    return _document(parts)
