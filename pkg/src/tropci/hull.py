"""Exact convex hulls of small point sets by gift wrapping.

Points are tuples of ints or Fractions. All predicates are exact; facets
with more than ``d`` points on them are kept whole rather than triangulated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import factorial
from typing import Sequence

from .linalg import affine_rank, dot, integer_normalize, nullspace, rank, sub


@dataclass(frozen=True)
class Facet:
    """Inequality ``normal . x <= offset``, tight exactly on ``members``."""

    normal: tuple
    offset: object
    members: frozenset


def _normalized(normal, offset, pts) -> Facet:
    normal, (offset,) = integer_normalize(normal, offset)
    members = frozenset(i for i, p in enumerate(pts) if dot(normal, p) == offset)
    return Facet(normal, offset, members)


def _drop_coordinate(points: Sequence[Sequence], k: int) -> list[tuple]:
    return [tuple(x for j, x in enumerate(p) if j != k) for p in points]


def spanning_coordinates(points: Sequence[Sequence]) -> list[int]:
    """Coordinate indices whose projection is injective on the affine hull."""
    if len(points) < 2:
        return []
    p0 = points[0]
    dirs = [sub(p, p0) for p in points[1:]]
    n = len(p0)
    # greedy: pick columns that raise the rank of the direction matrix
    chosen: list[int] = []
    for c in range(n):
        trial = chosen + [c]
        if rank([[row[j] for j in trial] for row in dirs]) == len(trial):
            chosen = trial
    return chosen


def _project(points: Sequence[Sequence], coords: Sequence[int]) -> list[tuple]:
    return [tuple(p[c] for c in coords) for p in points]


def _initial_facet(pts: list[tuple]) -> Facet:
    d = len(pts[0])
    normal = tuple(int(j == 0) for j in range(d))
    offset = max(p[0] for p in pts)
    members = [i for i, p in enumerate(pts) if p[0] == offset]
    while affine_rank([pts[i] for i in members]) < d - 1:
        m0 = pts[members[0]]
        rows = [sub(pts[i], m0) for i in members[1:]] + [normal]
        nu = nullspace(rows, d)[0]
        best = None
        for p in pts:
            h = dot(normal, p) - offset
            if h < 0:
                r = Fraction(dot(nu, sub(p, m0))) / -h
                if best is None or r > best:
                    best = r
        new_normal = tuple(best * a + b for a, b in zip(normal, nu))
        f = _normalized(new_normal, dot(new_normal, m0), pts)
        normal, offset, members = f.normal, f.offset, sorted(f.members)
    return Facet(normal, offset, frozenset(members))


def _ridges(pts: list[tuple], facet: Facet) -> list[frozenset]:
    d = len(pts[0])
    idx = sorted(facet.members)
    if len(idx) == d:
        return [frozenset(c) for c in combinations(idx, d - 1)]
    k = next(j for j, a in enumerate(facet.normal) if a != 0)
    sub_pts = _drop_coordinate([pts[i] for i in idx], k)
    return [frozenset(idx[j] for j in f.members) for f in _facets_full(sub_pts)]


def _rotate(pts: list[tuple], facet: Facet, ridge: frozenset) -> Facet:
    d = len(pts[0])
    ridx = sorted(ridge)
    r0 = pts[ridx[0]]
    rows = [sub(pts[i], r0) for i in ridx[1:]]
    q = pts[next(i for i in sorted(facet.members) if i not in ridge)]
    dq = sub(q, r0)
    nu = next(v for v in nullspace(rows, d) if dot(v, dq) != 0)
    if dot(nu, dq) > 0:
        nu = tuple(-a for a in nu)
    best = None
    for p in pts:
        h = dot(facet.normal, p) - facet.offset
        if h < 0:
            r = Fraction(dot(nu, sub(p, r0))) / -h
            if best is None or r > best:
                best = r
    normal = tuple(best * a + b for a, b in zip(facet.normal, nu))
    return _normalized(normal, dot(normal, r0), pts)


def _facets_full(pts: list[tuple]) -> list[Facet]:
    d = len(pts[0])
    if d == 1:
        xs = [p[0] for p in pts]
        lo, hi = min(xs), max(xs)
        return [
            Facet((-1,), -lo, frozenset(i for i, x in enumerate(xs) if x == lo)),
            Facet((1,), hi, frozenset(i for i, x in enumerate(xs) if x == hi)),
        ]
    first = _initial_facet(pts)
    found = {first.members: first}
    stack = [first]
    while stack:
        facet = stack.pop()
        for ridge in _ridges(pts, facet):
            nxt = _rotate(pts, facet, ridge)
            if nxt.members not in found:
                found[nxt.members] = nxt
                stack.append(nxt)
    return sorted(found.values(), key=lambda f: sorted(f.members))


def facets(points: Sequence[Sequence]) -> list[Facet]:
    """Facets of a full-dimensional point configuration."""
    pts = [tuple(p) for p in points]
    if not pts:
        raise ValueError("empty point set")
    if affine_rank(pts) != len(pts[0]):
        raise ValueError("point set is not full-dimensional")
    return _facets_full(pts)


def extreme_points(points: Sequence[Sequence]) -> list[int]:
    """Indices of the vertices of conv(points), in increasing order."""
    pts = [tuple(p) for p in points]
    if len(pts) == 1:
        return [0]
    coords = spanning_coordinates(pts)
    if not coords:
        return [0]
    proj = _project(pts, coords)
    return sorted(_extreme_full(proj, list(range(len(proj)))))


def _extreme_full(pts: list[tuple], idx: list[int]) -> set[int]:
    d = len(pts[0])
    if len(idx) == d + 1:
        return set(idx)
    if d == 1:
        xs = [(pts[i][0], i) for i in idx]
        return {min(xs)[1], max(xs)[1]}
    out: set[int] = set()
    local = [pts[i] for i in idx]
    for f in _facets_full(local):
        members = sorted(f.members)
        k = next(j for j, a in enumerate(f.normal) if a != 0)
        sub_pts = _drop_coordinate([local[i] for i in members], k)
        out.update(idx[members[j]] for j in _extreme_full(sub_pts, list(range(len(sub_pts)))))
    return out


def fan_triangulation(points: Sequence[Sequence]) -> list[tuple[int, ...]]:
    """Triangulate a full-dimensional polytope by coning from its
    lexicographically least point over the facets not containing it."""
    pts = [tuple(p) for p in points]
    d = len(pts[0])
    if affine_rank(pts) != d:
        raise ValueError("point set is not full-dimensional")
    return _triangulate(pts, list(range(len(pts))))


def _triangulate(pts: list[tuple], idx: list[int]) -> list[tuple[int, ...]]:
    local = [pts[i] for i in idx]
    d = len(local[0])
    if d == 1:
        xs = [(p[0], i) for i, p in zip(idx, local)]
        return [(min(xs)[1], max(xs)[1])]
    if len(idx) == d + 1:
        return [tuple(idx)]
    apex = min(range(len(idx)), key=lambda i: local[i])
    simplices = []
    for f in _facets_full(local):
        if apex in f.members:
            continue
        members = sorted(f.members)
        k = next(j for j, a in enumerate(f.normal) if a != 0)
        sub_pts = _drop_coordinate([local[i] for i in members], k)
        for simplex in _triangulate(sub_pts, list(range(len(sub_pts)))):
            simplices.append((idx[apex],) + tuple(idx[members[j]] for j in simplex))
    return simplices


def simplex_volume(vertices: Sequence[Sequence]) -> Fraction:
    from .linalg import det

    v0 = vertices[0]
    d = len(v0)
    return Fraction(abs(det([sub(v, v0) for v in vertices[1:]])), factorial(d))


def volume(points: Sequence[Sequence]) -> Fraction:
    """Exact Euclidean volume of a full-dimensional polytope."""
    pts = [tuple(p) for p in points]
    return sum((simplex_volume([pts[i] for i in s]) for s in fan_triangulation(pts)), Fraction(0))


def lattice_points(points: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """All integer points of conv(points), sorted lexicographically."""
    pts = [tuple(int(x) for x in p) for p in points]
    n = len(pts[0])
    coords = spanning_coordinates(pts)
    if not coords:
        return [pts[0]]
    proj = _project(pts, coords)
    dim = len(coords)
    ineqs = [(f.normal, f.offset) for f in _facets_full(proj)]
    p0 = pts[0]
    dirs = [sub(p, p0) for p in pts[1:]]
    ambient_rank = rank(dirs)
    lo = [min(p[j] for p in pts) for j in range(n)]
    hi = [max(p[j] for p in pts) for j in range(n)]
    out = []
    for cand in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        c = tuple(cand[j] for j in coords)
        if any(dot(nrm, c) > off for nrm, off in ineqs):
            continue
        if dim < n and rank(dirs + [sub(cand, p0)]) != ambient_rank:
            continue
        out.append(cand)
    return out
