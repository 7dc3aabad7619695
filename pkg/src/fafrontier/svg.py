"""Deterministic SVG rendering of a feasible set, frontiers and special points."""
from __future__ import annotations

from typing import Sequence

from .geometry import ConvexPolygon, Polyline

SIZE = 600
MARGIN = 40


def _fmt(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def emit_svg(polygon: ConvexPolygon, frontiers: Sequence[Polyline] = (), special_points=None) -> str:
    if polygon.is_empty:
        raise ValueError("cannot draw an empty polygon")
    labelled = []
    if special_points is not None:
        for name in ("r", "b", "f"):
            labelled.append((name, getattr(special_points, f"{name}_point")))
    coords = [float(c) for p in polygon.vertices for c in p]
    coords += [float(c) for fr in frontiers for p in fr.points for c in p]
    coords += [float(c) for _, p in labelled for c in p]
    lo, hi = min(coords), max(coords)
    if hi - lo < 1e-12:
        lo, hi = lo - 0.5, hi + 0.5
    pad = (hi - lo) * 0.05
    lo, hi = lo - pad, hi + pad
    span = SIZE - 2 * MARGIN

    def x(u):
        return MARGIN + (float(u) - lo) / (hi - lo) * span

    def y(v):
        return SIZE - MARGIN - (float(v) - lo) / (hi - lo) * span

    def pts(points):
        return " ".join(f"{_fmt(x(p[0]))},{_fmt(y(p[1]))}" for p in points)

    bottom, top, left, right = SIZE - MARGIN, MARGIN, MARGIN, SIZE - MARGIN
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<line class="axis" x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>',
        f'<line class="axis" x1="{left}" y1="{bottom}" x2="{left}" y2="{top}" stroke="black"/>',
        f'<text x="{SIZE // 2}" y="{SIZE - 8}" text-anchor="middle" font-size="14">e_r</text>',
        f'<text x="14" y="{SIZE // 2}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 14 {SIZE // 2})">e_b</text>',
        f'<text x="{left}" y="{bottom + 16}" text-anchor="middle" font-size="10">{lo:.3g}</text>',
        f'<text x="{right}" y="{bottom + 16}" text-anchor="middle" font-size="10">{hi:.3g}</text>',
        f'<text x="{left - 4}" y="{top + 4}" text-anchor="end" font-size="10">{hi:.3g}</text>',
        f'<line class="diagonal" x1="{left}" y1="{bottom}" x2="{right}" y2="{top}" stroke="gray" '
        f'stroke-dasharray="6 4"/>',
    ]
    vs = polygon.vertices
    if len(vs) >= 3:
        out.append(f'<polygon class="feasible" points="{pts(vs)}" fill="#9ecae1" fill-opacity="0.6" '
                   f'stroke="#3182bd"/>')
    elif len(vs) == 2:
        out.append(f'<polyline class="feasible" points="{pts(vs)}" fill="none" stroke="#3182bd" '
                   f'stroke-width="6" stroke-opacity="0.6"/>')
    else:
        out.append(f'<circle class="feasible" cx="{_fmt(x(vs[0][0]))}" cy="{_fmt(y(vs[0][1]))}" r="6" '
                   f'fill="#9ecae1" stroke="#3182bd"/>')
    for fr in frontiers:
        if len(fr.points) >= 2:
            out.append(f'<polyline class="frontier" points="{pts(fr.points)}" fill="none" stroke="#de2d26" '
                       f'stroke-width="3"/>')
        elif fr.points:
            p = fr.points[0]
            out.append(f'<circle class="frontier" cx="{_fmt(x(p[0]))}" cy="{_fmt(y(p[1]))}" r="4" '
                       f'fill="#de2d26"/>')
    # coincident special points share one marker with a combined label
    groups: dict = {}
    for name, p in labelled:
        key = (_fmt(x(p[0])), _fmt(y(p[1])))
        groups.setdefault(key, []).append(name)
    for (cx, cy), names in groups.items():
        out.append(f'<circle class="special" cx="{cx}" cy="{cy}" r="3" fill="black"/>')
        out.append(f'<text class="label" x="{_fmt(float(cx) + 6)}" y="{_fmt(float(cy) - 6)}" '
                   f'font-size="13">{",".join(names)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
