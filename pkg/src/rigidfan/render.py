"""SVG drawings of frameworks.

Thin strokes are positive stresses, thick strokes negative ones, dashed
strokes (near) zero.  Fan centers / central-edge nodes are black, the
neighbors grey, everything else white.  3D frameworks are drawn in
orthographic projection along the central edge.
"""
from __future__ import annotations

import numpy as np

from .construction import FanDecomposition, Framework, project_along
from .rigidity import TOL_EQ

THIN = 1.0
THICK = 3.0
SIZE = 480
MARGIN = 24


def _fmt(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


def _plane_coords(fw: Framework, fan: FanDecomposition | None) -> np.ndarray:
    p = fw.coords
    if fw.dim == 2:
        return p
    if fan is not None and fan.kind == "fan3d":
        a, b = fan.centers[0]
        return project_along(p, a, b)
    return p[:, :2]


def _node_fill(fw, fan):
    fill = ["white"] * fw.n
    if fan is None or fan.kind == "simplex":
        return fill
    for v in fan.neighbors:
        fill[v] = "#999999"
    for c in fan.centers:
        for v in (c if isinstance(c, tuple) else (c,)):
            fill[v] = "black"
    return fill


def render_svg(fw: Framework, fan: FanDecomposition | None = None, stress=None) -> str:
    """Return the SVG document as text.

    ``stress`` is aligned with ``fw.edges``; ``None`` draws plain edges.
    """
    xy = _plane_coords(fw, fan)
    lo = xy.min(axis=0)
    span = float(max((xy.max(axis=0) - lo).max(), 1e-12))
    k = (SIZE - 2 * MARGIN) / span
    # flip y so the drawing has the usual orientation
    px = MARGIN + (xy[:, 0] - lo[0]) * k
    py = SIZE - MARGIN - (xy[:, 1] - lo[1]) * k

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        '<rect width="100%" height="100%" fill="white"/>',
        '<g id="edges" stroke="black" stroke-linecap="round">',
    ]
    top = float(np.max(np.abs(stress))) if stress is not None and len(stress) else 0.0
    for k_e, (i, j) in enumerate(fw.edges):
        attrs = f'stroke-width="{_fmt(THIN)}"'
        cls = "plain"
        if stress is not None:
            w = stress[k_e]
            if abs(w) <= TOL_EQ * max(top, 1.0):
                attrs += ' stroke-dasharray="4 3"'
                cls = "zero"
            elif w > 0:
                cls = "positive"
            else:
                attrs = f'stroke-width="{_fmt(THICK)}"'
                cls = "negative"
        lines.append(
            f'<line class="{cls}" x1="{_fmt(px[i])}" y1="{_fmt(py[i])}" '
            f'x2="{_fmt(px[j])}" y2="{_fmt(py[j])}" {attrs}/>'
        )
    lines.append("</g>")
    lines.append('<g id="nodes" stroke="black" stroke-width="1">')
    for v, fill in enumerate(_node_fill(fw, fan)):
        lines.append(f'<circle cx="{_fmt(px[v])}" cy="{_fmt(py[v])}" r="5" fill="{fill}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
