"""Deterministic SVG for planar subdivisions, marked complexes and plane curves."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .dual_complex import HypersurfaceComplex
from .errors import WrongDimension
from .quarter_planes import MarkedComplex, Staircase
from .subdivision import Subdivision

SIZE = 400
MARGIN = 20


def _num(x) -> str:
    s = f"{float(x):.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Frame:
    """Affine map from data coordinates to the fixed SVG viewbox (y flipped)."""

    def __init__(self, pts: Sequence[Sequence]):
        xs = [Fraction(p[0]) for p in pts] or [Fraction(0)]
        ys = [Fraction(p[1]) for p in pts] or [Fraction(0)]
        self.x0, self.y0 = min(xs), min(ys)
        span = max(max(xs) - self.x0, max(ys) - self.y0, Fraction(1))
        self.k = Fraction(SIZE - 2 * MARGIN) / span

    def __call__(self, p) -> tuple[str, str]:
        x = MARGIN + (Fraction(p[0]) - self.x0) * self.k
        y = SIZE - MARGIN - (Fraction(p[1]) - self.y0) * self.k
        return _num(x), _num(y)


def _header(extra: str = "") -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">',
        "<defs>",
        '<pattern id="hatch" width="6" height="6" patternUnits="userSpaceOnUse" patternTransform="rotate(45)">',
        '<line x1="0" y1="0" x2="0" y2="6" stroke="#555" stroke-width="1"/>',
        "</pattern>",
        "</defs>",
        extra,
    ]


def _polygon_order(pts: Sequence[Sequence[int]]) -> list:
    if len(pts) <= 2:
        return sorted(pts)
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    return sorted(pts, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))


def _cell_path(frame: _Frame, verts, cls: str, fill: str = "none") -> str:
    pts = _polygon_order(list(verts))
    d = " ".join(("M" if i == 0 else "L") + " {} {}".format(*frame(p)) for i, p in enumerate(pts))
    if len(pts) > 2:
        d += " Z"
    return f'<path class="{cls}" d="{d}" fill="{fill}" stroke="#000" stroke-width="1"/>'


def _require_planar(s: Subdivision) -> None:
    if s.ambient_dim != 2:
        raise WrongDimension("only planar objects are rendered")


def render_subdivision(s: Subdivision) -> str:
    _require_planar(s)
    frame = _Frame(s.used_points())
    out = _header()
    for cell in s.cells:
        out.append(_cell_path(frame, cell.vertices, "cell"))
    for v in s.vertex_points():
        x, y = frame(v)
        out.append(f'<circle class="vertex" cx="{x}" cy="{y}" r="2"/>')
    out.append("</svg>")
    return "\n".join(line for line in out if line) + "\n"


def render_marked(k: MarkedComplex, staircase: Staircase | None = None) -> str:
    s = k.base
    _require_planar(s)
    corners = [(0, 0), (k.m, 0), (0, k.m)]
    frame = _Frame(list(s.used_points()) + corners)
    out = _header()
    out.append(_cell_path(frame, corners, "newton", "none").replace('stroke="#000"', 'stroke="#999"'))
    marked = set(k.marked_cells)
    for i, cell in enumerate(s.cells):
        if i in marked:
            out.append(_cell_path(frame, cell.vertices, "cell marked", "url(#hatch)"))
        else:
            out.append(_cell_path(frame, cell.vertices, "cell"))
    for a, b in k.marked_edges:
        (x1, y1), (x2, y2) = frame(a), frame(b)
        out.append(f'<line class="edge marked" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#000" stroke-width="3"/>')
    for v in k.marked_vertices:
        x, y = frame(v)
        out.append(f'<circle class="vertex marked" cx="{x}" cy="{y}" r="4" fill="#c00"/>')
    if staircase is not None:
        for name, pts in (
            ("u", [(i, staircase.u[i]) for i in range(staircase.a0 + 1)]),
            ("r", [(staircase.r[j], j) for j in range(staircase.b0 + 1)]),
        ):
            coords = " ".join("{},{}".format(*frame(p)) for p in pts)
            out.append(f'<polyline class="staircase {name}" points="{coords}" fill="none" stroke="#06c" stroke-width="4"/>')
    out.append("</svg>")
    return "\n".join(line for line in out if line) + "\n"


def render_curve(c: HypersurfaceComplex) -> str:
    """Plane tropical curve; rays are drawn with a fixed length beyond the
    bounding box of the vertices."""
    if c.poly.n_vars != 2:
        raise WrongDimension("only plane curves are rendered")
    anchors = list(c.vertices) + [e.cell.vertices[0] for e in c.edges]
    xs = [Fraction(p[0]) for p in anchors] or [Fraction(0)]
    ys = [Fraction(p[1]) for p in anchors] or [Fraction(0)]
    reach = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1)) / 2

    def far(p, d):
        return (p[0] + reach * d[0], p[1] + reach * d[1])

    ends = list(anchors)
    for e in c.edges:
        for r in e.cell.rays:
            ends.append(far(e.cell.vertices[0], r))
    frame = _Frame(ends)
    out = _header()
    for e in c.edges:
        if e.kind == "bounded":
            a, b = e.cell.vertices
        elif e.kind == "ray":
            a, b = e.cell.vertices[0], far(e.cell.vertices[0], e.cell.rays[0])
        else:
            a, b = far(e.cell.vertices[0], e.cell.rays[0]), far(e.cell.vertices[0], e.cell.rays[1])
        (x1, y1), (x2, y2) = frame(a), frame(b)
        out.append(
            f'<line class="edge {e.kind}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            f'stroke="#000" stroke-width="{e.weight}"/>'
        )
    for v in c.vertices:
        x, y = frame(v)
        out.append(f'<circle class="vertex" cx="{x}" cy="{y}" r="3"/>')
    out.append("</svg>")
    return "\n".join(line for line in out if line) + "\n"
