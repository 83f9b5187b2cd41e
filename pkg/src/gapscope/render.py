"""Deterministic SVG rendering of fronts.

Plain string assembly, no plotting dependency: identical inputs must give
byte-identical files to keep analyze runs reproducible.  Each front is a
single stroked path; cusps get dot markers, crossings get small saltires,
and every curve is annotated with parameter ticks at multiples of pi/4.
"""

import numpy as np

TWO_PI = 2.0 * np.pi

PALETTE = ["#1f4e79", "#b5442d", "#3a7d44", "#7a4f9e", "#a07f1f", "#2d7f8a"]

TICK_LABELS = ["0", "pi/4", "pi/2", "3pi/4", "pi", "5pi/4", "3pi/2", "7pi/4"]


def _fmt(x):
    return f"{x:.6f}"


class _Viewport:
    def __init__(self, curves, size, margin):
        pts = np.vstack([c.xy for c in curves])
        lo = pts.min(axis=0)
        hi = pts.max(axis=0)
        span = max(float((hi - lo).max()), 1e-9)
        self.scale = (size - 2 * margin) / span
        self.lo = lo
        self.size = size
        self.margin = margin
        self.span = span

    def map(self, p):
        x = self.margin + (p[0] - self.lo[0]) * self.scale
        y = self.size - self.margin - (p[1] - self.lo[1]) * self.scale
        return x, y


def _path_d(view, pts, closed):
    parts = []
    for i, p in enumerate(pts):
        x, y = view.map(p)
        parts.append(("M" if i == 0 else "L") + f"{_fmt(x)},{_fmt(y)}")
    if closed:
        parts.append("Z")
    return " ".join(parts)


def _interp_point(curve, theta):
    th = curve.thetas
    m = len(th)
    d = curve.delta
    pos = (theta - th[0]) / d
    i = int(np.floor(pos)) % m
    frac = pos - np.floor(pos)
    pts = curve.xy
    return pts[i] * (1.0 - frac) + pts[(i + 1) % m] * frac


def render_svg(curves, path, cusp_points=None, crossing_points=None,
               size=720, margin=48, theta_ticks=True, title=""):
    """Write an SVG of one or more fronts.

    ``cusp_points`` and ``crossing_points`` are (x, y) sequences; ticks
    mark theta = j*pi/4 on each curve when the curve covers that angle.
    """
    curves = list(curves)
    if not curves:
        raise ValueError("nothing to render")
    view = _Viewport(curves, size, margin)
    out = []
    out.append(f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
               f'viewBox="0 0 {size} {size}">')
    out.append(f'<rect width="{size}" height="{size}" fill="white"/>')
    if title:
        out.append(f'<text x="{margin}" y="{margin - 18}" font-size="14" '
                   f'font-family="monospace">{title}</text>')
    for idx, c in enumerate(curves):
        color = PALETTE[idx % len(PALETTE)]
        out.append(f'<path d="{_path_d(view, c.xy, c.closed)}" fill="none" '
                   f'stroke="{color}" stroke-width="1.2"/>')
        if theta_ticks:
            lo = float(c.thetas[0])
            hi = lo + (len(c.thetas)) * c.delta
            for j in range(8):
                tj = j * np.pi / 4.0
                if not (lo - 1e-9 <= tj <= hi + 1e-9 or c.closed):
                    continue
                p = _interp_point(c, tj)
                x, y = view.map(p)
                nx, ny = np.cos(tj), -np.sin(tj)   # screen y runs downward
                out.append(f'<line x1="{_fmt(x - 4 * nx)}" y1="{_fmt(y - 4 * ny)}" '
                           f'x2="{_fmt(x + 4 * nx)}" y2="{_fmt(y + 4 * ny)}" '
                           f'stroke="{color}" stroke-width="0.8"/>')
                if idx == 0:
                    out.append(f'<text x="{_fmt(x + 7 * nx)}" y="{_fmt(y + 7 * ny)}" '
                               f'font-size="9" font-family="monospace" '
                               f'fill="{color}">{TICK_LABELS[j]}</text>')
    for px, py in (cusp_points or []):
        x, y = view.map((px, py))
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.4" fill="#111111"/>')
    for px, py in (crossing_points or []):
        x, y = view.map((px, py))
        out.append(f'<path d="M{_fmt(x - 3)},{_fmt(y - 3)} L{_fmt(x + 3)},{_fmt(y + 3)} '
                   f'M{_fmt(x - 3)},{_fmt(y + 3)} L{_fmt(x + 3)},{_fmt(y - 3)}" '
                   f'stroke="#111111" stroke-width="1.0" fill="none"/>')
    out.append("</svg>")
    data = "\n".join(out) + "\n"
    with open(path, "w") as fh:
        fh.write(data)
    return data
