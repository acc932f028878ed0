"""Assemble C = V(f) & V(g) on the standard tropical plane from the six
quarter-plane restrictions, and read off its counts and topology."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .dual_complex import RAY_DIRECTIONS, hypersurface_complex
from .errors import Disconnected, GlueMismatch, NotCertified, SegmentOnRay, VertexOnAxis
from .linalg import integer_normalize, sub
from .quarter_planes import QuarterPlane, origin_monomial, restrict_to_quarter_plane
from .subdivision import SmoothnessCertificate, Verdict, certify_smooth_ci
from .trop_core import TropPoly, argmax_terms, format_rational, normalize_to_standard_plane

Point3 = tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class TropicalCurveGraph:
    positions: tuple[Point3, ...]
    labels: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    rays: tuple[tuple[int, tuple[int, int, int]], ...]
    d: int
    e: int
    verdict: str = Verdict.SMOOTH.value

    def degree(self, vid: int) -> int:
        return sum((a == vid) + (b == vid) for a, b in self.edges) + sum(1 for v, _ in self.rays if v == vid)

    def is_trivalent(self) -> bool:
        return all(self.degree(v) == 3 for v in range(len(self.positions)))

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "e": self.e,
            "verdict": self.verdict,
            "vertices": [
                {"id": i, "position": [format_rational(c) for c in p], "label": lab}
                for i, (p, lab) in enumerate(zip(self.positions, self.labels))
            ],
            "edges": [list(e) for e in self.edges],
            "rays": [{"vertex": v, "direction": list(d)} for v, d in self.rays],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TropicalCurveGraph":
        verts = sorted(data["vertices"], key=lambda v: v["id"])
        return cls(
            tuple(tuple(Fraction(c) for c in v["position"]) for v in verts),
            tuple(v["label"] for v in verts),
            tuple(tuple(e) for e in data["edges"]),
            tuple((r["vertex"], tuple(r["direction"])) for r in data["rays"]),
            int(data["d"]),
            int(data["e"]),
            data.get("verdict", Verdict.SMOOTH.value),
        )


@dataclass(frozen=True)
class CurveTopology:
    s: int
    t: int
    genus_of_C: int

    @property
    def allowed(self) -> bool:
        return self.s - self.t == 6 and (self.s, self.t) in {(6, 0), (7, 1), (8, 2), (9, 3)}


def verify_origin_exclusion(g: TropPoly) -> bool:
    return len(argmax_terms(g, (0,) * g.n_vars)) == 1


def _clip(point, direction, lo, hi):
    """Restrict {point + lam*direction : lo <= lam <= hi} (None = unbounded) to
    the closed negative quadrant; returns (lo, hi) or None."""
    along_axis = False
    for k in range(2):
        p, d = point[k], direction[k]
        if d == 0:
            if p > 0:
                return None
            along_axis = along_axis or p == 0
            continue
        bound = -p / d
        if d > 0:
            hi = bound if hi is None else min(hi, bound)
        else:
            lo = bound if lo is None else max(lo, bound)
    if lo is not None and hi is not None and lo >= hi:
        # touching the quadrant in one point only happens at a vertex
        return None
    if along_axis:
        raise SegmentOnRay("an edge of the restricted curve runs along an axis")
    return lo, hi


@dataclass
class _Piece:
    plane: QuarterPlane
    ends: list = field(default_factory=list)  # Point3 or ("inf", direction)


def _linear_part(q: QuarterPlane, d) -> tuple[int, int, int]:
    o = q.embed(0, 0)
    v = sub(q.embed(d[0], d[1]), o)
    return integer_normalize(v)[0]


def _quarter_pieces(g: TropPoly, q: QuarterPlane):
    p, embed = restrict_to_quarter_plane(g, q)
    origin_monomial(p)
    cx = hypersurface_complex(p)
    interior = []
    for v in cx.vertices:
        if v[0] < 0 and v[1] < 0:
            interior.append(embed(*v))
        elif (v[0] == 0 and v[1] <= 0) or (v[1] == 0 and v[0] <= 0):
            raise VertexOnAxis(f"vertex {v} of the {q.name} restriction lies on an axis")
    pieces, axis_points = [], {q.axes[0]: set(), q.axes[1]: set()}
    for e in cx.edges:
        cell = e.cell
        if e.kind == "bounded":
            a, b = cell.vertices
            base, dirn, lo, hi = a, sub(b, a), Fraction(0), Fraction(1)
        elif e.kind == "ray":
            base, dirn, lo, hi = cell.vertices[0], cell.rays[0], Fraction(0), None
        else:
            base, dirn, lo, hi = cell.vertices[0], cell.rays[0], None, None
        span = _clip(base, dirn, lo, hi)
        if span is None:
            continue
        piece = _Piece(q)
        for lam in span:
            if lam is None:
                continue
            pt = tuple(base[k] + lam * dirn[k] for k in range(2))
            if pt[0] == 0 and pt[1] == 0:
                raise VertexOnAxis(f"the {q.name} restriction passes through the origin")
            if pt[0] == 0:
                axis_points[q.axes[1]].add(embed(*pt))
            elif pt[1] == 0:
                axis_points[q.axes[0]].add(embed(*pt))
            piece.ends.append(embed(*pt))
        lo_, hi_ = span
        if hi_ is None:
            piece.ends.append(("inf", _linear_part(q, dirn)))
        if lo_ is None:
            piece.ends.append(("inf", _linear_part(q, tuple(-c for c in dirn))))
        pieces.append(piece)
    return interior, pieces, axis_points


_RAY_PLANES = {
    ray: [q for q in QuarterPlane if ray in q.axes] for ray in RAY_DIRECTIONS
}


def _assemble(g: TropPoly, d: int, verdict: str) -> TropicalCurveGraph:
    labels: dict[Point3, str] = {}
    pieces = []
    axis_sets: dict[str, dict[QuarterPlane, set]] = {r: {} for r in RAY_DIRECTIONS}
    for q in QuarterPlane:
        interior, qp, axis_points = _quarter_pieces(g, q)
        for v in interior:
            labels[v] = q.name
        pieces.extend(qp)
        for ray, pts in axis_points.items():
            axis_sets[ray][q] = pts
    for ray, per_plane in axis_sets.items():
        sets = [frozenset(per_plane[q]) for q in _RAY_PLANES[ray]]
        if len(set(sets)) != 1:
            raise GlueMismatch(f"quarter planes disagree on the crossings with ray {ray}")
        for pt in sets[0]:
            labels[pt] = ray
    order = sorted(labels)
    index = {p: i for i, p in enumerate(order)}
    edges, rays = [], []
    for pc in pieces:
        finite = [e for e in pc.ends if not (isinstance(e[0], str))]
        infinite = [e for e in pc.ends if isinstance(e[0], str)]
        for pt in finite:
            if pt not in index:
                raise GlueMismatch(f"edge end {pt} is not a vertex of the curve")
        if len(finite) == 2:
            a, b = sorted(index[p] for p in finite)
            edges.append((a, b))
        elif len(finite) == 1 and len(infinite) == 1:
            rays.append((index[finite[0]], infinite[0][1]))
        else:
            raise GlueMismatch("a piece of the curve has no finite endpoint")
    return TropicalCurveGraph(
        tuple(order), tuple(labels[p] for p in order), tuple(sorted(edges)), tuple(sorted(rays)), d, g.degree, verdict
    )


def expected_counts(d: int, e: int) -> tuple[int, int, int]:
    v = d * d * e + d * e * e
    edges = (3 * d * d * e + 3 * d * e * e - 4 * d * e) // 2
    return v, edges, 4 * d * e


def expected_genus(d: int, e: int) -> int:
    return (d * d * e + d * e * e) // 2 - 2 * d * e + 1


def intersection_curve(
    f: TropPoly, g: TropPoly, certificate: SmoothnessCertificate | None = None
) -> TropicalCurveGraph:
    cert = certificate if certificate is not None else certify_smooth_ci(f, g)
    if cert.verdict is Verdict.NOT_WEAKLY_SMOOTH:
        raise NotCertified("the Cayley subdivision has a mixed cell of volume above 1/24", cert)
    t, g2 = normalize_to_standard_plane(f, g)
    c = _assemble(g2, 1, cert.verdict.value)
    if any(t):
        shifted = tuple(tuple(p[k] + t[k] for k in range(3)) for p in c.positions)
        c = TropicalCurveGraph(shifted, c.labels, c.edges, c.rays, c.d, c.e, c.verdict)
    got, want = count_cells(c), expected_counts(c.d, c.e)
    if got != want or not c.is_trivalent():
        msg = f"curve counts {got} differ from {want} or curve not trivalent"
        if cert.verdict is Verdict.SMOOTH:
            raise GlueMismatch(msg)
        warnings.warn(msg, stacklevel=2)
    return c


def count_cells(c: TropicalCurveGraph) -> tuple[int, int, int]:
    return len(c.positions), len(c.edges), len(c.rays)


def _components(n: int, edges: Sequence[tuple[int, int]]) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    return len({find(x) for x in range(n)})


def curve_genus(c: TropicalCurveGraph) -> int:
    n = len(c.positions)
    if n == 0 or _components(n, c.edges) != 1:
        raise Disconnected("genus is defined for connected curves")
    return len(c.edges) - n + 1


def components_and_betti(c: TropicalCurveGraph) -> CurveTopology:
    """Cut C at its crossings with X, Y, Z, W; each cut end and each ray end
    becomes its own leaf. s = components, t = first Betti number."""
    on_axis = {i for i, lab in enumerate(c.labels) if lab in RAY_DIRECTIONS}
    keep = [i for i in range(len(c.positions)) if i not in on_axis]
    node = {v: k for k, v in enumerate(keep)}
    n = len(keep)
    edges = []

    def end(v):
        nonlocal n
        if v in on_axis:
            n += 1
            return n - 1
        return node[v]

    for a, b in c.edges:
        edges.append((end(a), end(b)))
    for v, _ in c.rays:
        a = end(v)
        n += 1
        edges.append((a, n - 1))
    s = _components(n, edges)
    t = len(edges) - n + s
    try:
        genus = curve_genus(c)
    except Disconnected:
        genus = -1
    return CurveTopology(s, t, genus)
