"""The tropical curve V(p) in R^2 as a polyhedral complex dual to the regular
subdivision of Newt(p), plus ray traces of three-variable polynomials."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from . import hull
from .errors import EmptyPolynomial, SegmentOnRay, UnknownExponent, WrongDimension, ZeroVector
from .feasibility import exact_feasible, halfplanes_to_vertices
from .linalg import dot, integer_normalize, sub
from .subdivision import Subdivision, regular_subdivision
from .trop_core import Exponent, TropPoly, format_rational

Point = tuple[Fraction, ...]


def primitive_vector(v: Sequence[int]) -> tuple[int, ...]:
    if all(x == 0 for x in v):
        raise ZeroVector("zero vector has no primitive direction")
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return tuple(int(x) // g for x in v)


def _direction(v: Sequence) -> tuple[int, ...]:
    """Primitive integer vector along a nonzero rational vector."""
    if all(x == 0 for x in v):
        raise ZeroVector("zero vector has no primitive direction")
    return integer_normalize(v)[0]


def lattice_length(p: Sequence[int], q: Sequence[int]) -> int:
    g = 0
    for a, b in zip(p, q):
        g = gcd(g, a - b)
    return g


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class PolyhedralCell2:
    """conv(vertices) + cone(rays); opposite rays encode a line."""

    vertices: tuple[Point, ...]
    rays: tuple[tuple[int, ...], ...]
    dim: int
    # closed H-representation a.x <= b; only filled for 2-dimensional domains
    constraints: tuple[tuple[tuple[Fraction, ...], Fraction], ...] = ()

    @property
    def bounded(self) -> bool:
        return not self.rays

    def contains(self, x: Sequence) -> bool:
        x = tuple(Fraction(c) for c in x)
        if self.dim == 2:
            return all(dot(a, x) <= b for a, b in self.constraints)
        if self.dim == 0:
            return x == self.vertices[0]
        v0 = self.vertices[0]
        d = sub(x, v0)
        if len(self.vertices) == 2:
            seg = sub(self.vertices[1], v0)
            return _cross(d, seg) == 0 and 0 <= dot(d, seg) <= dot(seg, seg)
        r = self.rays[0]
        if _cross(d, r) != 0:
            return False
        return len(self.rays) == 2 or dot(d, r) >= 0

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "vertices": [[format_rational(c) for c in v] for v in self.vertices],
            "rays": [list(r) for r in self.rays],
        }


@dataclass(frozen=True)
class ComplexEdge:
    """Edge of V(p): kind is 'bounded', 'ray' or 'line'."""

    kind: str
    cell: PolyhedralCell2
    dual: tuple[Exponent, Exponent]
    vertex_ids: tuple[int, ...]

    @property
    def weight(self) -> int:
        return lattice_length(*self.dual)

    def to_json(self) -> dict:
        out = self.cell.to_json()
        out.update(
            kind=self.kind,
            dual=[list(e) for e in self.dual],
            weight=self.weight,
            vertex_ids=list(self.vertex_ids),
        )
        return out


@dataclass(frozen=True)
class HypersurfaceComplex:
    poly: TropPoly
    subdivision: Subdivision
    vertices: tuple[Point, ...]
    edges: tuple[ComplexEdge, ...]
    domains: Mapping[Exponent, PolyhedralCell2] = field(default_factory=dict)

    def incident(self, vid: int) -> list[ComplexEdge]:
        return [e for e in self.edges if vid in e.vertex_ids]

    def on_curve(self, x: Sequence) -> bool:
        """Point location against vertices and edges only (no argmax)."""
        x = tuple(Fraction(c) for c in x)
        return any(v == x for v in self.vertices) or any(e.cell.contains(x) for e in self.edges)

    def to_json(self) -> dict:
        return {
            "vertices": [[format_rational(c) for c in v] for v in self.vertices],
            "edges": [e.to_json() for e in self.edges],
            "domains": [{"exp": list(k), **v.to_json()} for k, v in sorted(self.domains.items())],
        }


def _domain_constraints(p: TropPoly, e: Exponent) -> list[tuple[tuple, Fraction]]:
    ce = p.terms[e]
    return [(sub(a, e), ce - c) for a, c in p.terms.items() if a != e]


def domain_of_monomial(p: TropPoly, e: Sequence[int]) -> PolyhedralCell2 | None:
    """Closure of the open region where term ``e`` is the only maximum, or
    None when that region is empty."""
    e = tuple(e)
    if p.is_empty():
        raise EmptyPolynomial("no domains for the -inf polynomial")
    if e not in p.terms:
        raise UnknownExponent(f"{e} is not a term")
    if p.n_vars != 2:
        raise WrongDimension("domains are computed for two-variable polynomials")
    cons = _domain_constraints(p, e)
    if cons and exact_feasible(strict_ineqs=cons, n_vars=2) is None:
        return None
    verts, rays = halfplanes_to_vertices(cons)
    return PolyhedralCell2(tuple(verts), tuple(rays), 2, tuple((tuple(Fraction(x) for x in a), b) for a, b in cons))


def _edge_line(p: TropPoly, f: Exponent, w: Sequence[Fraction]) -> PolyhedralCell2:
    point = tuple(-x for x in w)
    d = primitive_vector(f)
    perp = (-d[1], d[0])
    return PolyhedralCell2((point,), tuple(sorted([perp, (-perp[0], -perp[1])])), 1)


def hypersurface_complex(p: TropPoly) -> HypersurfaceComplex:
    if p.is_empty():
        raise EmptyPolynomial("the -inf polynomial has no complex")
    if p.n_vars != 2:
        raise WrongDimension("hypersurface complex is built for two-variable polynomials")
    sd = regular_subdivision(p)
    if sd.dim < 2:
        domains = {}
        for v in sd.vertex_points():
            dom = domain_of_monomial(p, v)
            if dom is not None:
                domains[v] = dom
        edges = []
        if sd.dim == 1:
            for cell in sd.cells:
                a, b = cell.vertices[0], cell.vertices[-1]
                edges.append(ComplexEdge("line", _edge_line(p, sub(b, a), cell.normal), (a, b), ()))
        return HypersurfaceComplex(p, sd, (), tuple(edges), domains)

    verts = tuple(tuple(-x for x in cell.normal) for cell in sd.cells)
    sides: dict[tuple[Exponent, Exponent], list[tuple[int, tuple]]] = {}
    for ci, cell in enumerate(sd.cells):
        for f in hull.facets(cell.members):
            pts = sorted(cell.members[i] for i in f.members)
            sides.setdefault((pts[0], pts[-1]), []).append((ci, f.normal))
    edges = []
    for key in sorted(sides):
        owners = sides[key]
        if len(owners) == 2:
            (i, _), (j, _) = owners
            seg = PolyhedralCell2(tuple(sorted([verts[i], verts[j]])), (), 1)
            edges.append(ComplexEdge("bounded", seg, key, (i, j)))
        elif len(owners) == 1:
            i, normal = owners[0]
            ray = PolyhedralCell2((verts[i],), (primitive_vector(normal),), 1)
            edges.append(ComplexEdge("ray", ray, key, (i,)))
        else:
            raise AssertionError(f"subdivision edge {key} lies in {len(owners)} cells")
    # a full-dimensional subdivision gives every vertex a domain with nonempty
    # interior: its corners are the complex vertices of the cells around it
    domains = {}
    for v in sd.vertex_points():
        corners = sorted({verts[i] for i, cell in enumerate(sd.cells) if v in cell.vertices})
        rays = sorted({e.cell.rays[0] for e in edges if e.kind == "ray" and v in e.dual})
        cons = tuple((tuple(Fraction(x) for x in a), b) for a, b in _domain_constraints(p, v))
        domains[v] = PolyhedralCell2(tuple(corners), tuple(rays), 2, cons)
    return HypersurfaceComplex(p, sd, verts, tuple(edges), domains)


def outgoing_directions(c: HypersurfaceComplex, vid: int) -> list[tuple[int, tuple[int, ...]]]:
    """(weight, primitive outgoing direction) for every edge at a vertex."""
    here = c.vertices[vid]
    out = []
    for e in c.incident(vid):
        if e.kind == "ray":
            out.append((e.weight, e.cell.rays[0]))
        else:
            other = e.vertex_ids[1] if e.vertex_ids[0] == vid else e.vertex_ids[0]
            out.append((e.weight, _direction(sub(c.vertices[other], here))))
    return out


def check_balancing(c: HypersurfaceComplex) -> bool:
    for vid in range(len(c.vertices)):
        total = [0, 0]
        for w, d in outgoing_directions(c, vid):
            total[0] += w * d[0]
            total[1] += w * d[1]
        if total != [0, 0]:
            return False
    return True


# rays of the standard tropical plane, parametrized by s > 0
RAY_DIRECTIONS = {
    "X": (-1, 0, 0),
    "Y": (0, -1, 0),
    "Z": (0, 0, -1),
    "W": (1, 1, 1),
}


@dataclass(frozen=True)
class RayTrace:
    ray: str
    params: tuple[Fraction, ...]
    points: tuple[Point, ...]
    path: tuple[Exponent, ...]


def ray_intersections(g: TropPoly, ray: str) -> RayTrace:
    """Crossings of V(g) with the open ray, ordered outward from the origin."""
    if g.is_empty():
        raise EmptyPolynomial("no crossings for the -inf polynomial")
    if g.n_vars != 3:
        raise WrongDimension("rays live in R^3")
    d = RAY_DIRECTIONS[ray]
    lines: dict[int, list[tuple[Fraction, Exponent]]] = {}
    for e, c in g.terms.items():
        lines.setdefault(dot(e, d), []).append((c, e))
    best = {}
    for slope, items in lines.items():
        top = max(c for c, _ in items)
        best[slope] = (top, [e for c, e in items if c == top])

    def pick(slope):
        top, exps = best[slope]
        if len(exps) > 1:
            raise SegmentOnRay(f"terms {exps} tie along the whole {ray} ray segment")
        return top, exps[0]

    c0 = max(v[0] for v in best.values())
    slope = max(m for m, v in best.items() if v[0] == c0)
    c0, e0 = pick(slope)
    path, params, points = [e0], [], []
    s_cur = Fraction(0)
    while True:
        cands = [((c0 - c) / (m - slope), m) for m, (c, _) in best.items() if m > slope]
        if not cands:
            break
        s_next = min(s for s, _ in cands)
        slope = max(m for s, m in cands if s == s_next)
        c0, e0 = pick(slope)
        assert s_next > s_cur
        s_cur = s_next
        params.append(s_next)
        points.append(tuple(Fraction(s_next * x) for x in d))
        path.append(e0)
    return RayTrace(ray, tuple(params), tuple(points), tuple(path))
