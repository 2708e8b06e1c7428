"""Minimal SVG 1.1 output: curve polylines plus frame-vector arrows.

The drawing is data-space with a flipped y axis; the view box is fitted
to everything drawn with a 5% margin.  Arrows are <line> elements with a
shared arrowhead marker (itself a small polyline in <defs>), grouped per
anchor point.
"""

from __future__ import annotations

import numpy as np

__all__ = ["render_svg"]

_CURVE_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")
_ARROW_COLORS = {"e1": "#1f77b4", "e2": "#2ca02c", "t": "#ff7f0e", "n": "#d62728"}


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def render_svg(curves, arrow_groups=(), width: int = 640, height: int = 480) -> str:
    """Render curves and arrows to an SVG document string.

    curves: iterable of (points, label) with points of shape (n, 2).
    arrow_groups: iterable of (anchor, [(vector, kind), ...]); kind picks
    the arrow color (e1, e2, t, n).
    """
    curves = [(np.asarray(p, dtype=float), label) for p, label in curves]
    if not curves or all(len(p) < 2 for p, _ in curves):
        raise ValueError("nothing to draw: need at least one curve with two points")

    xs, ys = [], []
    for pts, _ in curves:
        xs.append(pts[:, 0])
        ys.append(pts[:, 1])
    groups = []
    for anchor, vectors in arrow_groups:
        anchor = np.asarray(anchor, dtype=float)
        vecs = [(np.asarray(v, dtype=float), kind) for v, kind in vectors]
        groups.append((anchor, vecs))
        xs.append(np.array([anchor[0]] + [anchor[0] + v[0] for v, _ in vecs]))
        ys.append(np.array([anchor[1]] + [anchor[1] + v[1] for v, _ in vecs]))
    x_all = np.concatenate(xs)
    y_all = np.concatenate(ys)
    x0, x1 = float(x_all.min()), float(x_all.max())
    y0, y1 = float(y_all.min()), float(y_all.max())
    pad_x = 0.05 * max(x1 - x0, 1e-9)
    pad_y = 0.05 * max(y1 - y0, 1e-9)
    x0, x1 = x0 - pad_x, x1 + pad_x
    y0, y1 = y0 - pad_y, y1 + pad_y

    span_x = x1 - x0
    span_y = y1 - y0
    scale = min(width / span_x, height / span_y)

    def to_px(p):
        return (p[0] - x0) * scale, (y1 - p[1]) * scale

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(span_x * scale)}" height="{_fmt(span_y * scale)}" '
        f'viewBox="0 0 {_fmt(span_x * scale)} {_fmt(span_y * scale)}">',
        "<defs>",
        '<marker id="arrowhead" markerWidth="7" markerHeight="6" refX="6" refY="3" '
        'orient="auto" markerUnits="strokeWidth">',
        '<polyline points="0,0 6,3 0,6" fill="none" stroke="context-stroke" stroke-width="1"/>',
        "</marker>",
        "</defs>",
    ]
    for i, (pts, label) in enumerate(curves):
        color = _CURVE_COLORS[i % len(_CURVE_COLORS)]
        coords = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in (to_px(p) for p in pts))
        lines.append(
            f'<polyline class="curve" data-label="{label}" fill="none" '
            f'stroke="{color}" stroke-width="1.5" points="{coords}"/>'
        )
    for anchor, vecs in groups:
        ax, ay = to_px(anchor)
        parts = [f'<g class="frame" transform="translate({_fmt(ax)},{_fmt(ay)})">']
        for vec, kind in vecs:
            tip = to_px(anchor + vec)
            color = _ARROW_COLORS.get(kind, "#555555")
            parts.append(
                f'<line class="{kind}" x1="0" y1="0" '
                f'x2="{_fmt(tip[0] - ax)}" y2="{_fmt(tip[1] - ay)}" '
                f'stroke="{color}" stroke-width="1" marker-end="url(#arrowhead)"/>'
            )
        parts.append("</g>")
        lines.append("".join(parts))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
