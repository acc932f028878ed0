"""Restrictions of V(g) to the six quarter planes of the standard tropical
plane, the marked subcomplex K' of the dual subdivision, and the staircase
functions u, r that describe its shape."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .dual_complex import HypersurfaceComplex, PolyhedralCell2, domain_of_monomial, hypersurface_complex, ray_intersections
from .errors import AmbiguousStaircase, EmptyPolynomial, OriginOnCurve, VertexOnAxis, WrongDimension
from .feasibility import exact_feasible
from .linalg import sub
from .subdivision import Subdivision
from .trop_core import Exponent, TropPoly, argmax_terms, homogenize, permute_variables, slice_restrict

X, Y, Z, W = 0, 1, 2, 3


class QuarterPlane(enum.Enum):
    # value: (kept variables of g^h in order, axis ray of the first and second coordinate)
    XY = ((X, Y), ("X", "Y"))
    YZ = ((Y, Z), ("Y", "Z"))
    ZX = ((Z, X), ("Z", "X"))
    XW = ((X, W), ("X", "W"))
    YW = ((Y, W), ("Y", "W"))
    ZW = ((Z, W), ("Z", "W"))

    @property
    def kept(self) -> tuple[int, int]:
        return self.value[0]

    @property
    def fixed(self) -> tuple[int, int]:
        return tuple(v for v in range(4) if v not in self.kept)

    @property
    def axes(self) -> tuple[str, str]:
        """Ray of R^3 hit by the first (resp. second) negative coordinate axis."""
        return self.value[1]

    def embed(self, s, t) -> tuple[Fraction, Fraction, Fraction]:
        s, t = Fraction(s), Fraction(t)
        a, b = self.kept
        if b != W:
            out = [Fraction(0)] * 3
            out[a], out[b] = s, t
            return tuple(out)
        out = [-t, -t, -t]
        out[a] = s - t
        return tuple(out)


def restrict_to_quarter_plane(g: TropPoly, q: QuarterPlane) -> tuple[TropPoly, Callable]:
    """g^h with the two variables outside ``q`` set to 0, in ``q``'s variable order."""
    if g.is_empty():
        raise EmptyPolynomial("no restriction of the -inf polynomial")
    if g.n_vars != 3:
        raise WrongDimension("quarter planes live in R^3")
    gh = homogenize(g, g.degree)
    r = slice_restrict(gh, q.fixed)
    remaining = [v for v in range(4) if v not in q.fixed]
    order = [remaining.index(v) for v in q.kept]
    return permute_variables(r, order), q.embed


def origin_monomial(p: TropPoly) -> Exponent:
    top = argmax_terms(p, (0,) * p.n_vars)
    if len(top) != 1:
        raise OriginOnCurve(f"maximal coefficient attained by {sorted(top)}")
    return next(iter(top))


# closed negative quadrant
_QUADRANT = [((1, 0), 0), ((0, 1), 0)]


def _tie_constraints(p: TropPoly, face: Sequence[Exponent]) -> list:
    """Weak constraints for {x : every exponent in ``face`` attains the max}."""
    v = face[0]
    cv = p.terms[v]
    cons = [(sub(a, v), cv - c) for a, c in p.terms.items() if a != v]
    for w in face[1:]:
        cons.append((sub(v, w), p.terms[w] - cv))
    return cons


def _meets_quadrant(p: TropPoly, face: Sequence[Exponent]) -> bool:
    return exact_feasible(weak_ineqs=_tie_constraints(p, face) + _QUADRANT, n_vars=2) is not None


@dataclass(frozen=True)
class MarkedComplex:
    base: Subdivision
    complex: HypersurfaceComplex
    marked_vertices: tuple[Exponent, ...]
    marked_edges: tuple[tuple[Exponent, Exponent], ...]
    marked_cells: tuple[int, ...]
    # None when the origin lies on V(p): the marking is still defined
    a0: int | None
    b0: int | None
    m: int

    @property
    def poly(self) -> TropPoly:
        return self.complex.poly

    def subdivision_edges(self) -> list[tuple[Exponent, Exponent]]:
        return [e.dual for e in self.complex.edges]

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "marked_vertices": [list(v) for v in self.marked_vertices],
            "marked_edges": [[list(a), list(b)] for a, b in self.marked_edges],
            "marked_cells": list(self.marked_cells),
            "a0": self.a0,
            "b0": self.b0,
            "m": self.m,
        }


def marked_subcomplex(p: TropPoly, m: int | None = None) -> MarkedComplex:
    """Mark the faces of Subdiv_p whose dual cells meet the closed negative quadrant."""
    if p.n_vars != 2:
        raise WrongDimension("marked complexes are planar")
    cx = hypersurface_complex(p)
    for v in cx.vertices:
        if (v[0] == 0 and v[1] <= 0) or (v[1] == 0 and v[0] <= 0):
            raise VertexOnAxis(f"vertex {v} of the restricted curve lies on a negative axis")
    try:
        a0, b0 = origin_monomial(p)
    except OriginOnCurve:
        a0 = b0 = None
    sd = cx.subdivision
    verts = tuple(v for v in sd.vertex_points() if _meets_quadrant(p, [v]))
    edges = tuple(e.dual for e in cx.edges if _meets_quadrant(p, list(e.dual)))
    cells = tuple(i for i, v in enumerate(cx.vertices) if v[0] <= 0 and v[1] <= 0)
    return MarkedComplex(sd, cx, verts, edges, cells, a0, b0, p.degree if m is None else m)


def _cell_edges(k: MarkedComplex, ci: int) -> list[tuple[Exponent, Exponent]]:
    return [e.dual for e in k.complex.edges if ci in e.vertex_ids]


def faces_closed(k: MarkedComplex) -> bool:
    mv, me = set(k.marked_vertices), set(k.marked_edges)
    if any(a not in mv or b not in mv for a, b in me):
        return False
    for ci in k.marked_cells:
        if any(v not in mv for v in k.base.cells[ci].vertices):
            return False
        if any(e not in me for e in _cell_edges(k, ci)):
            return False
    return True


def support_connected(k: MarkedComplex) -> bool:
    if not k.marked_vertices:
        return False
    adj: dict[Exponent, set] = {v: set() for v in k.marked_vertices}
    for a, b in k.marked_edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    for ci in k.marked_cells:
        vs = k.base.cells[ci].vertices
        for v in vs:
            adj.setdefault(v, set()).update(vs)
    start = k.marked_vertices[0]
    seen, stack = {start}, [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == set(adj)


@dataclass(frozen=True)
class Staircase:
    u: tuple[int, ...]
    r: tuple[int, ...]

    @property
    def a0(self) -> int:
        return len(self.u) - 1

    @property
    def b0(self) -> int:
        return len(self.r) - 1

    def u_at(self, x) -> Fraction:
        return _pl(self.u, Fraction(x))

    def r_at(self, y) -> Fraction:
        return _pl(self.r, Fraction(y))

    def boundary_path(self) -> list[tuple[int, int]]:
        """Closed polygon (0,0) -> (r(0),0) -> ... -> (a0,b0) -> ... -> (0,u(0))."""
        pts = [(0, 0)] + [(self.r[j], j) for j in range(self.b0 + 1)]
        pts += [(i, self.u[i]) for i in range(self.a0 - 1, -1, -1)]
        out = []
        for p in pts:
            if not out or out[-1] != p:
                out.append(p)
        if len(out) > 1 and out[-1] == out[0]:
            out.pop()
        return out

    def to_json(self) -> dict:
        return {"u": list(self.u), "r": list(self.r)}


def _pl(values: Sequence[int], x: Fraction) -> Fraction:
    n = len(values) - 1
    if not 0 <= x <= n:
        raise ValueError(f"{x} outside [0, {n}]")
    i = min(int(x), n - 1) if n > 0 else 0
    if n == 0:
        return Fraction(values[0])
    return values[i] + (values[i + 1] - values[i]) * (x - i)


def _axis_monomials(k: MarkedComplex, axis: int) -> list[Exponent]:
    """Subdivision vertices whose domain meets the open negative ``axis``."""
    other = 1 - axis
    e_axis = tuple(int(i == axis) for i in range(2))
    e_other = tuple(int(i == other) for i in range(2))
    out = []
    for v in k.marked_vertices:
        cons = _tie_constraints(k.poly, [v]) + [(e_other, 0), (tuple(-c for c in e_other), 0)]
        if exact_feasible(strict_ineqs=[(e_axis, 0)], weak_ineqs=cons, n_vars=2) is not None:
            out.append(v)
    return out


def staircase_functions(k: MarkedComplex) -> Staircase:
    if k.a0 is None:
        raise OriginOnCurve("no origin monomial, so no staircase")

    def build(axis, length):
        by_coord: dict[int, list[int]] = {}
        for v in _axis_monomials(k, axis):
            by_coord.setdefault(v[axis], []).append(v[1 - axis])
        vals = []
        for i in range(length + 1):
            opts = by_coord.get(i, [])
            if len(opts) != 1:
                raise AmbiguousStaircase(f"{len(opts)} monomials at coordinate {i} meet axis {'XY'[axis]}")
            vals.append(opts[0])
        if set(by_coord) - set(range(length + 1)):
            raise AmbiguousStaircase("axis monomials beyond the origin monomial")
        return tuple(vals)

    return Staircase(build(0, k.a0), build(1, k.b0))


def staircase_coefficients_ok(p: TropPoly, s: Staircase) -> bool:
    """Coefficients along each staircase strictly increase with strictly
    decreasing increments."""
    for seq in (
        [p.terms[(i, s.u[i])] for i in range(s.a0 + 1)],
        [p.terms[(s.r[j], j)] for j in range(s.b0 + 1)],
    ):
        diffs = [b - a for a, b in zip(seq, seq[1:])]
        if any(d <= 0 for d in diffs):
            return False
        if any(b >= a for a, b in zip(diffs, diffs[1:])):
            return False
    return True


def staircase_unique_max_ok(p: TropPoly, s: Staircase) -> bool:
    """alpha_{i,u(i)} is the only maximum over exponents with x <= i; same for r."""
    for i in range(s.a0 + 1):
        c = p.terms[(i, s.u[i])]
        if any(e != (i, s.u[i]) and e[0] <= i and v >= c for e, v in p.terms.items()):
            return False
    for j in range(s.b0 + 1):
        c = p.terms[(s.r[j], j)]
        if any(e != (s.r[j], j) and e[1] <= j and v >= c for e, v in p.terms.items()):
            return False
    return True


def staircase_ur_relations_ok(s: Staircase) -> bool:
    u, r = s.u, s.r
    for i in range(s.a0 + 1):
        for j in range(s.b0 + 1):
            if r[j] <= i and not j <= u[i]:
                return False
            if u[i] <= j and not i <= r[j]:
                return False
            if r[j] <= i and u[i] == j and (r[j], j) != (i, u[i]):
                return False
            if u[i] <= j and r[j] == i and (r[j], j) != (i, u[i]):
                return False
    return True


def _pieces(values: Sequence[int], along: int):
    """Linear pieces of the staircase graph as (lo, hi, base, slope) in the
    ``along`` coordinate."""
    if len(values) == 1:
        return [(0, 0, values[0], 0)]
    return [(i, i + 1, values[i], values[i + 1] - values[i]) for i in range(len(values) - 1)]


def _region_U(piece, m):
    lo, hi, base, slope = piece
    # x in [lo, hi], y > base + slope*(x - lo), inside Delta_m
    strict = [((slope, -1), slope * lo - base)]
    weak = [((-1, 0), -lo), ((1, 0), hi), ((0, -1), 0), ((1, 1), m)]
    return strict, weak


def _region_R(piece, m):
    lo, hi, base, slope = piece
    strict = [((-1, slope), slope * lo - base)]
    weak = [((0, -1), -lo), ((0, 1), hi), ((-1, 0), 0), ((1, 1), m)]
    return strict, weak


def u_r_disjoint(s: Staircase, m: int) -> bool:
    for pu in _pieces(s.u, 0):
        su, wu = _region_U(pu, m)
        for pr in _pieces(s.r, 1):
            sr, wr = _region_R(pr, m)
            if exact_feasible(su + sr, wu + wr, n_vars=2) is not None:
                return False
    return True


def in_shape(pt: Sequence, s: Staircase, m: int) -> bool:
    """Membership in Delta_m minus (U, R and the open corner beyond (a0, b0))."""
    x, y = Fraction(pt[0]), Fraction(pt[1])
    if x < 0 or y < 0 or x + y > m:
        return False
    if 0 <= x <= s.a0 and y > s.u_at(x):
        return False
    if 0 <= y <= s.b0 and x > s.r_at(y):
        return False
    return not (x > s.a0 and y > s.b0)


def _face_contains(k: MarkedComplex, pt: Exponent) -> bool:
    from . import hull

    if pt in k.marked_vertices:
        return True
    for a, b in k.marked_edges:
        d, e = sub(b, a), sub(pt, a)
        if d[0] * e[1] - d[1] * e[0] == 0 and 0 <= d[0] * e[0] + d[1] * e[1] <= d[0] ** 2 + d[1] ** 2:
            return True
    for ci in k.marked_cells:
        cell = k.base.cells[ci]
        if all(f.normal[0] * pt[0] + f.normal[1] * pt[1] <= f.offset for f in hull.facets(cell.members)):
            return True
    return False


def support_lattice_points(k: MarkedComplex) -> list[Exponent]:
    from .trop_core import full_support

    return [pt for pt in full_support(2, k.m) if _face_contains(k, pt)]


def shoelace(poly: Sequence[Sequence]) -> Fraction:
    n = len(poly)
    twice = sum(Fraction(poly[i][0]) * poly[(i + 1) % n][1] - Fraction(poly[(i + 1) % n][0]) * poly[i][1] for i in range(n))
    return abs(twice) / 2


def marked_area(k: MarkedComplex) -> Fraction:
    return sum((k.base.cells[ci].volume() for ci in k.marked_cells), Fraction(0))


def verify_kprime_shape(k: MarkedComplex, s: Staircase) -> bool:
    """|K'| equals Delta_m minus (U and R): same lattice points and same area."""
    from .trop_core import full_support

    expected = [pt for pt in full_support(2, k.m) if in_shape(pt, s, k.m)]
    if expected != support_lattice_points(k):
        return False
    path = s.boundary_path()
    area = shoelace(path) if len(path) >= 3 else Fraction(0)
    return area == marked_area(k)


def check_area_half(k: MarkedComplex) -> bool:
    return all(k.base.cells[ci].volume() == Fraction(1, 2) for ci in k.marked_cells)


def _is_boundary_point(pt: Exponent, m: int) -> bool:
    return pt[0] == 0 or pt[1] == 0 or pt[0] + pt[1] == m


def enclosed_cycle_domains(k: MarkedComplex) -> list[Exponent]:
    """Marked vertices interior to |K'|: interior to Delta_m with every cell
    around them marked."""
    marked = set(k.marked_cells)
    out = []
    for v in k.marked_vertices:
        if _is_boundary_point(v, k.m):
            continue
        around = [i for i, c in enumerate(k.base.cells) if v in c.members]
        if around and all(i in marked for i in around):
            out.append(v)
    return out


@dataclass(frozen=True)
class Decomposition:
    a_prime: frozenset
    b_prime: frozenset
    d: tuple[PolyhedralCell2, ...]


def restriction_decomposition(g: TropPoly) -> Decomposition:
    """Split the terms of g|_{z=0} by whether their fibre maximum is unique (A)
    or attained at least twice (B), keeping those with nonempty domain."""
    if g.is_empty():
        raise EmptyPolynomial("no restriction of the -inf polynomial")
    fibres: dict[Exponent, list[Fraction]] = {}
    for e, c in g.terms.items():
        fibres.setdefault(e[:2], []).append(c)
    h = slice_restrict(g, {2})
    a_set, b_set, d = set(), set(), []
    for e in sorted(h.terms):
        dom = domain_of_monomial(h, e)
        if dom is None:
            continue
        cs = fibres[e]
        if cs.count(max(cs)) >= 2:
            b_set.add(e)
            d.append(dom)
        else:
            a_set.add(e)
    return Decomposition(frozenset(a_set), frozenset(b_set), tuple(d))


def monomial_ray_path(g: TropPoly, ray: str) -> list[tuple[int, int, int, int]]:
    """Homogenized exponents of the maximal terms along ``ray``, origin outward."""
    m = g.degree
    return [e + (m - sum(e),) for e in ray_intersections(g, ray).path]
