"""Minimal self-contained SVG heatmap writer."""
from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

LOW_RGB = (255, 255, 255)
HIGH_RGB = (8, 48, 107)


def ramp(x: float) -> str:
    """Single-hue ramp, white at 0 to dark blue at 1."""
    x = min(max(float(x), 0.0), 1.0)
    r, g, b = (round(lo + (hi - lo) * x) for lo, hi in zip(LOW_RGB, HIGH_RGB))
    return f"#{r:02x}{g:02x}{b:02x}"


def heatmap_svg(values, xs, ys, *, title="", xlabel="x", ylabel="y",
                vmin=0.0, vmax=1.0, fmt=lambda v: format(v, ".17g")) -> str:
    """Render ``values[iy, ix]`` as a grid of rectangles.

    Each cell carries its exact value in a ``data-value`` attribute, so the
    image can be checked against the numbers it was drawn from.
    """
    values = np.asarray(values, dtype=float)
    ny, nx = values.shape
    left, top, pw, ph = 80, 40, 600, 320
    bar_x = left + pw + 30
    width, height = bar_x + 100, top + ph + 60
    cw, ch = pw / nx, ph / ny
    span = vmax - vmin if vmax > vmin else 1.0

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<text x="{left + pw / 2}" y="{top - 15}" text-anchor="middle" '
        f'font-size="14">{escape(title)}</text>',
        '<g id="cells" shape-rendering="crispEdges">',
    ]
    for iy in range(ny):
        # first row at the bottom
        y = top + ph - (iy + 1) * ch
        for ix in range(nx):
            v = values[iy, ix]
            out.append(
                f'<rect x="{left + ix * cw:.4f}" y="{y:.4f}" width="{cw:.4f}" '
                f'height="{ch:.4f}" fill="{ramp((v - vmin) / span)}" '
                f'data-ix="{ix}" data-iy="{iy}" data-value="{fmt(v)}"/>'
            )
    out.append("</g>")
    out.append(f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" '
               'fill="none" stroke="black"/>')

    for frac, label in ((0.0, xs[0]), (1.0, xs[-1])):
        x = left + frac * pw
        out.append(f'<text x="{x}" y="{top + ph + 18}" text-anchor="middle">{label:.4g}</text>')
    for frac, label in ((0.0, ys[0]), (1.0, ys[-1])):
        y = top + ph - frac * ph
        out.append(f'<text x="{left - 8}" y="{y + 4}" text-anchor="end">{label:.4g}</text>')
    out.append(f'<text x="{left + pw / 2}" y="{top + ph + 40}" '
               f'text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="{left - 50}" y="{top + ph / 2}" text-anchor="middle" '
               f'transform="rotate(-90 {left - 50} {top + ph / 2})">{escape(ylabel)}</text>')

    steps = 50
    sh = ph / steps
    out.append('<g id="colorbar">')
    for k in range(steps):
        frac = (k + 0.5) / steps
        out.append(f'<rect x="{bar_x}" y="{top + ph - (k + 1) * sh:.4f}" width="20" '
                   f'height="{sh:.4f}" fill="{ramp(frac)}"/>')
    out.append("</g>")
    out.append(f'<rect x="{bar_x}" y="{top}" width="20" height="{ph}" fill="none" stroke="black"/>')
    out.append(f'<text x="{bar_x + 26}" y="{top + 4}">{vmax:.4g}</text>')
    out.append(f'<text x="{bar_x + 26}" y="{top + ph + 4}">{vmin:.4g}</text>')
    out.append(f'<text x="{left}" y="{height - 5}">min = {np.min(values):.6g}, '
               f'max = {np.max(values):.6g}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
