"""Regular subdivisions of lifted lattice point configurations, Cayley
subdivisions of pairs of polynomials, and smoothness certificates."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd
from typing import Sequence

from . import hull
from .errors import DegenerateCell, EmptyPolynomial, WrongDimension
from .linalg import affine_rank, det, dot, integer_normalize, nullspace, solve, sub
from .trop_core import Exponent, LatticePolytope, TropPoly, format_rational

UNIMODULAR_4_VOLUME = Fraction(1, 24)


@dataclass(frozen=True)
class LiftedConfig:
    points: tuple[Exponent, ...]
    lifts: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.points) != len(self.lifts):
            raise ValueError("points and lifts differ in length")
        if len(set(self.points)) != len(self.points):
            raise ValueError("lattice points must be distinct")
        if not self.points:
            raise ValueError("empty configuration")

    @classmethod
    def from_poly(cls, p: TropPoly) -> "LiftedConfig":
        if p.is_empty():
            raise EmptyPolynomial("the -inf polynomial has no subdivision")
        return cls(tuple(p.terms.keys()), tuple(p.terms.values()))

    @property
    def ambient_dim(self) -> int:
        return len(self.points[0])

    def lift_of(self) -> dict[Exponent, Fraction]:
        return dict(zip(self.points, self.lifts))


@dataclass(frozen=True)
class SubdivCell:
    """Cell of a regular subdivision: the lattice points whose lift touches the
    affine functional ``a -> normal . a + offset`` (which dominates all lifts)."""

    members: tuple[Exponent, ...]
    normal: tuple[Fraction, ...]
    offset: Fraction
    dim: int

    @cached_property
    def vertices(self) -> tuple[Exponent, ...]:
        return tuple(self.members[i] for i in hull.extreme_points(self.members))

    def support_value(self, a: Sequence[int]) -> Fraction:
        return dot(self.normal, a) + self.offset

    def volume(self) -> Fraction:
        return cell_volume(self.members, self.dim)

    def to_json(self) -> dict:
        return {
            "members": [list(m) for m in self.members],
            "normal": [format_rational(x) for x in self.normal],
            "offset": format_rational(self.offset),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SubdivCell":
        members = tuple(sorted(tuple(int(a) for a in m) for m in data["members"]))
        return cls(
            members,
            tuple(Fraction(x) for x in data["normal"]),
            Fraction(data["offset"]),
            affine_rank(list(members)),
        )


@dataclass(frozen=True)
class Subdivision:
    ambient_dim: int
    cells: tuple[SubdivCell, ...]

    @property
    def dim(self) -> int:
        return self.cells[0].dim if self.cells else -1

    def vertex_points(self) -> list[Exponent]:
        """Lattice points that are vertices of some cell (the 0-faces)."""
        return sorted({v for c in self.cells for v in c.vertices})

    def used_points(self) -> list[Exponent]:
        return sorted({m for c in self.cells for m in c.members})

    def total_volume(self) -> Fraction:
        return sum((c.volume() for c in self.cells), Fraction(0))

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "cells": [c.to_json() for c in self.cells]}

    @classmethod
    def from_json(cls, data: dict) -> "Subdivision":
        cells = tuple(sorted((SubdivCell.from_json(c) for c in data["cells"]), key=lambda c: c.members))
        return cls(int(data["ambient_dim"]), cells)


def _generalized_cross(rows: list[tuple[int, ...]]) -> tuple[int, ...]:
    """Integer normal to k-1 integer vectors in R^k (cofactor expansion)."""
    k = len(rows[0])
    return tuple((-1) ** j * det([r[:j] + r[j + 1 :] for r in rows]) for j in range(k))


def _simplex_facets(pts: list[tuple]) -> list[tuple[list[int], tuple, int]]:
    """Facets (member indices, outward normal, offset) of a full-dim lattice simplex."""
    k = len(pts[0])
    out = []
    for j in range(k + 1):
        rest = [i for i in range(k + 1) if i != j]
        r0 = pts[rest[0]]
        n = _generalized_cross([sub(pts[i], r0) for i in rest[1:]]) if k > 1 else (1,)
        off = dot(n, r0)
        if dot(n, pts[j]) > off:
            n = tuple(-a for a in n)
            off = -off
        out.append((rest, n, off))
    return out


def _cell_ridges(pts: list[tuple]) -> list[tuple[list[int], tuple, int]]:
    if len(pts) == len(pts[0]) + 1:
        return _simplex_facets(pts)
    return [(sorted(f.members), f.normal, f.offset) for f in hull.facets(pts)]


def _primitive_functional(vec: list[int]) -> tuple[int, ...]:
    g = 0
    for x in vec:
        g = gcd(g, x)
    return tuple(x // g for x in vec) if g > 1 else tuple(vec)


def _wrap(pts: list[tuple], lifts: list[Fraction]) -> list[tuple[frozenset, tuple, Fraction]]:
    """Walk the upper hull of the lifted configuration cell by cell.

    ``pts`` must be full-dimensional in R^k. Each cell is returned as
    (member indices, w, c) with w.a + c >= lift everywhere, equality on members.
    Internally a functional is an integer vector (w, c, q) with q > 0, standing
    for (w.a + c) / q in units where all lifts are integers.
    """
    k = len(pts[0])
    n = len(pts)
    scale = 1
    for x in lifts:
        scale = scale * x.denominator // gcd(scale, x.denominator)
    lifted = [int(x * scale) for x in lifts]

    def slacks(f):
        w, c, q = f[:k], f[k], f[k + 1]
        return [dot(w, p) + c - q * lam for p, lam in zip(pts, lifted)]

    def rotate(f, s, normal, off):
        """Tilt f about the face {normal.a = off} until it hits another point."""
        mu = [dot(normal, p) - off for p in pts]
        best = None
        for i in range(n):
            if mu[i] > 0 and (best is None or s[i] * mu[best] < s[best] * mu[i]):
                best = i
        if best is None:
            return None
        mj, sj = mu[best], s[best]
        return _primitive_functional(
            [mj * a - sj * b for a, b in zip(f[:k], normal)] + [mj * f[k] + sj * off, mj * f[k + 1]]
        )

    f = tuple([0] * k + [max(lifted), 1])
    s = slacks(f)
    members = [i for i in range(n) if s[i] == 0]
    while affine_rank([pts[i] for i in members]) < k:
        m0 = pts[members[0]]
        nu = integer_normalize(nullspace([sub(pts[i], m0) for i in members[1:]], k)[0])[0]
        if not any(dot(nu, sub(p, m0)) > 0 for p in pts):
            nu = tuple(-a for a in nu)
        f = rotate(f, s, nu, dot(nu, m0))
        s = slacks(f)
        members = [i for i in range(n) if s[i] == 0]

    found = {frozenset(members): f}
    stack = [(frozenset(members), f)]
    while stack:
        mem, f = stack.pop()
        s = slacks(f)
        idx = sorted(mem)
        for _, normal, off in _cell_ridges([pts[i] for i in idx]):
            f2 = rotate(f, s, normal, off)
            if f2 is None:
                continue
            s2 = slacks(f2)
            mem2 = frozenset(i for i in range(n) if s2[i] == 0)
            if mem2 not in found:
                found[mem2] = f2
                stack.append((mem2, f2))
    out = []
    for mem, f in found.items():
        den = f[k + 1] * scale
        out.append((mem, tuple(Fraction(a, den) for a in f[:k]), Fraction(f[k], den)))
    return out


def _embed_functional(w_proj: Sequence[Fraction], coords: Sequence[int], ambient: int) -> tuple[Fraction, ...]:
    w = [Fraction(0)] * ambient
    for j, cidx in enumerate(coords):
        w[cidx] = Fraction(w_proj[j])
    return tuple(w)


def _build(config: LiftedConfig, raw: list[tuple[frozenset, tuple, Fraction]], coords, dim) -> Subdivision:
    cells = []
    for mem, w, c in raw:
        members = tuple(sorted(config.points[i] for i in mem))
        cells.append(SubdivCell(members, _embed_functional(w, coords, config.ambient_dim), Fraction(c), dim))
    cells.sort(key=lambda cell: cell.members)
    return Subdivision(config.ambient_dim, tuple(cells))


def subdivide(config: LiftedConfig) -> Subdivision:
    """Regular subdivision of ``config`` induced by its lifts (upper hull)."""
    coords = hull.spanning_coordinates(list(config.points))
    dim = len(coords)
    if dim == 0:
        cell = SubdivCell(
            config.points, tuple(Fraction(0) for _ in range(config.ambient_dim)), Fraction(config.lifts[0]), 0
        )
        return Subdivision(config.ambient_dim, (cell,))
    pts = [tuple(p[j] for j in coords) for p in config.points]
    raw = _wrap(pts, [Fraction(x) for x in config.lifts])
    return _build(config, raw, coords, dim)


def regular_subdivision(p: TropPoly) -> Subdivision:
    """Dual subdivision of Newt(p) from the upper hull of (exponent, coefficient)."""
    return subdivide(LiftedConfig.from_poly(p))


def brute_force_subdivision(config: LiftedConfig) -> Subdivision:
    """Oracle: test every affinely independent (k+1)-subset for a dominating
    affine functional through its lifted points."""
    coords = hull.spanning_coordinates(list(config.points))
    k = len(coords)
    pts = [tuple(p[j] for j in coords) for p in config.points]
    lifts = [Fraction(x) for x in config.lifts]
    if k == 0:
        return subdivide(config)
    raw: dict[frozenset, tuple] = {}
    for subset in combinations(range(len(pts)), k + 1):
        rows = [list(pts[i]) + [1] for i in subset]
        sol = solve(rows, [lifts[i] for i in subset])
        if sol is None:
            continue
        w, c = sol[:k], sol[k]
        vals = [dot(w, p) + c - lam for p, lam in zip(pts, lifts)]
        if any(v < 0 for v in vals):
            continue
        mem = frozenset(i for i, v in enumerate(vals) if v == 0)
        raw.setdefault(mem, (w, c))
    return _build(config, [(m, wc[0], wc[1]) for m, wc in raw.items()], coords, k)


def cell_volume(members: Sequence[Sequence[int]], d: int) -> Fraction:
    """Exact d-volume of conv(members); members must span R^d."""
    pts = [tuple(p) for p in members]
    if not pts or len(pts[0]) != d:
        raise WrongDimension(f"cell_volume needs points in R^{d}")
    if affine_rank(pts) < d:
        raise DegenerateCell(f"points span less than dimension {d}")
    if len(pts) == d + 1:
        return hull.simplex_volume(pts)
    return hull.volume(pts)


def is_unimodular_triangulation(s: Subdivision) -> bool:
    if s.ambient_dim != 2:
        raise WrongDimension("unimodularity test is for planar subdivisions")
    if s.dim != 2:
        return False
    half = Fraction(1, 2)
    return all(len(c.members) == 3 and c.volume() == half for c in s.cells)


def cayley_polytope(P: LatticePolytope, Q: LatticePolytope) -> list[tuple[int, ...]]:
    return [tuple(p) + (0,) for p in P.lattice_points] + [tuple(q) + (1,) for q in Q.lattice_points]


def cayley_config(p: TropPoly, q: TropPoly) -> LiftedConfig:
    if p.is_empty() or q.is_empty():
        raise EmptyPolynomial("Cayley subdivision needs two nonempty polynomials")
    if p.n_vars != q.n_vars:
        raise ValueError("polynomials live in different dimensions")
    pts = [e + (0,) for e in p.terms] + [e + (1,) for e in q.terms]
    lifts = list(p.terms.values()) + list(q.terms.values())
    return LiftedConfig(tuple(pts), tuple(lifts))


def cayley_subdivision(p: TropPoly, q: TropPoly) -> Subdivision:
    return subdivide(cayley_config(p, q))


def is_mixed_cell(c: SubdivCell) -> bool:
    low = [m[:-1] for m in c.members if m[-1] == 0]
    high = [m[:-1] for m in c.members if m[-1] == 1]
    return affine_rank(low) >= 1 and affine_rank(high) >= 1


class Verdict(str, enum.Enum):
    SMOOTH = "Smooth"
    WEAKLY_SMOOTH_ONLY = "WeaklySmoothOnly"
    NOT_WEAKLY_SMOOTH = "NotWeaklySmooth"


@dataclass(frozen=True)
class SmoothnessCertificate:
    verdict: Verdict
    witness: SubdivCell | None = None
    n_cells: int = 0
    n_mixed: int = 0
    # cells of volume 1/24 whose member count is not 5; always empty in practice
    anomalies: tuple[SubdivCell, ...] = field(default=())

    @property
    def weakly_smooth(self) -> bool:
        return self.verdict is not Verdict.NOT_WEAKLY_SMOOTH

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "witness": None if self.witness is None else self.witness.to_json(),
            "witness_volume": None if self.witness is None else format_rational(self.witness.volume()),
            "witness_mixed": None if self.witness is None else is_mixed_cell(self.witness),
            "n_cells": self.n_cells,
            "n_mixed": self.n_mixed,
            "anomalies": [a.to_json() for a in self.anomalies],
        }


def certify_smooth_ci(f: TropPoly, g: TropPoly) -> SmoothnessCertificate:
    """Classify V(f) & V(g) by the volumes of the 4-cells of their Cayley subdivision."""
    if f.n_vars != 3 or g.n_vars != 3:
        raise WrongDimension("smoothness certificate is for polynomials in three variables")
    sub_ = cayley_subdivision(f, g)
    if sub_.dim != 4:
        raise WrongDimension("Cayley polytope is not four-dimensional")
    bad_mixed, bad_pure, anomalies = [], [], []
    n_mixed = 0
    for cell in sub_.cells:
        mixed = is_mixed_cell(cell)
        n_mixed += mixed
        vol = cell.volume()
        if vol != UNIMODULAR_4_VOLUME:
            (bad_mixed if mixed else bad_pure).append((vol, cell))
        elif len(cell.members) != 5:
            anomalies.append(cell)

    def pick(cands):
        # largest violation first; cells are already in canonical order
        return max(cands, key=lambda vc: vc[0])[1]

    if bad_mixed:
        verdict, witness = Verdict.NOT_WEAKLY_SMOOTH, pick(bad_mixed)
    elif bad_pure:
        verdict, witness = Verdict.WEAKLY_SMOOTH_ONLY, pick(bad_pure)
    else:
        verdict, witness = Verdict.SMOOTH, None
    return SmoothnessCertificate(verdict, witness, len(sub_.cells), n_mixed, tuple(anomalies))
