"""Tropical polynomials in the max-plus convention with exact coefficients."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from . import hull
from .errors import DegreeTooSmall, EmptyPolynomial, NotAPlane, ParseError
from .linalg import dot

Exponent = tuple[int, ...]


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass int, Fraction or 'p/q' strings")
    return Fraction(value)


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class TropPoly:
    """Finite max-plus polynomial: exponent vector -> coefficient.

    An absent exponent has coefficient -infinity. The polynomial with no terms
    is representable but rejected by every geometric operation.
    """

    __slots__ = ("n_vars", "_terms")

    def __init__(self, n_vars: int, terms: Mapping[Sequence[int], object] | Iterable = ()):
        if n_vars < 1:
            raise ValueError("n_vars must be positive")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, Fraction] = {}
        for exp, coef in items:
            e = tuple(int(a) for a in exp)
            if len(e) != n_vars:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {n_vars}")
            if any(a < 0 for a in e):
                raise ValueError(f"negative exponent {e}")
            if e in clean:
                raise ValueError(f"duplicate exponent {e}")
            clean[e] = as_rational(coef)
        object.__setattr__(self, "n_vars", n_vars)
        object.__setattr__(self, "_terms", MappingProxyType(dict(sorted(clean.items()))))

    def __setattr__(self, name, value):
        raise AttributeError("TropPoly is immutable")

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return self._terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def is_empty(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TropPoly):
            return NotImplemented
        return self.n_vars == other.n_vars and dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        return hash((self.n_vars, tuple(self._terms.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{e}: {format_rational(c)}" for e, c in self._terms.items())
        return f"TropPoly({self.n_vars}, {{{body}}})"

    def __str__(self) -> str:
        if not self._terms:
            return "-inf"
        names = "xyzw" if self.n_vars <= 4 else None
        parts = []
        for e, c in self._terms.items():
            mono = []
            for i, a in enumerate(e):
                v = names[i] if names else f"x{i}"
                if a == 1:
                    mono.append(v)
                elif a > 1:
                    mono.append(f"{v}^{a}")
            body = "".join(mono)
            if c == 0 and body:
                parts.append(body)
            elif body:
                parts.append(f"{format_rational(c)}*{body}")
            else:
                parts.append(format_rational(c))
        return " + ".join(parts)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n_vars": self.n_vars,
            "terms": [{"exp": list(e), "coef": format_rational(c)} for e, c in self._terms.items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TropPoly":
        try:
            n = int(data["n_vars"])
            pairs = []
            for t in data["terms"]:
                coef = t["coef"]
                if isinstance(coef, float):
                    raise ParseError(f"coefficient {coef!r} must be an integer or 'p/q' string")
                pairs.append((tuple(t["exp"]), Fraction(coef)))
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"malformed polynomial: {exc}") from exc
        seen = set()
        for e, _ in pairs:
            if e in seen:
                raise ParseError(f"duplicate exponent {list(e)}")
            seen.add(e)
        try:
            return cls(n, pairs)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    @classmethod
    def loads(cls, text: str) -> "TropPoly":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
        return cls.from_json(data)


def standard_plane() -> TropPoly:
    """x + y + z + 0 with zero coefficients."""
    return TropPoly(3, {(0, 0, 0): 0, (1, 0, 0): 0, (0, 1, 0): 0, (0, 0, 1): 0})


def full_support(n_vars: int, degree: int) -> list[Exponent]:
    """Lattice points of the dilated standard simplex, lexicographic."""
    out: list[Exponent] = []

    def rec(prefix: tuple, left: int):
        if len(prefix) == n_vars:
            out.append(prefix)
            return
        for a in range(left + 1):
            rec(prefix + (a,), left - a)

    rec((), degree)
    return sorted(out)


def _require_terms(p: TropPoly) -> None:
    if p.is_empty():
        raise EmptyPolynomial("the -inf polynomial has no finite value")


def evaluate(p: TropPoly, x: Sequence) -> Fraction:
    _require_terms(p)
    if len(x) != p.n_vars:
        raise ValueError(f"point has {len(x)} coordinates, polynomial has {p.n_vars} variables")
    return max(c + dot(e, x) for e, c in p.terms.items())


def argmax_terms(p: TropPoly, x: Sequence) -> frozenset[Exponent]:
    """Exponents whose affine form attains the maximum at x."""
    _require_terms(p)
    if len(x) != p.n_vars:
        raise ValueError(f"point has {len(x)} coordinates, polynomial has {p.n_vars} variables")
    vals = {e: c + dot(e, x) for e, c in p.terms.items()}
    top = max(vals.values())
    return frozenset(e for e, v in vals.items() if v == top)


def in_hypersurface(p: TropPoly, x: Sequence) -> bool:
    return len(argmax_terms(p, x)) >= 2


@dataclass(frozen=True)
class LatticePolytope:
    vertices: tuple[Exponent, ...]
    lattice_points: tuple[Exponent, ...]

    @property
    def dim(self) -> int:
        from .linalg import affine_rank

        return affine_rank(list(self.vertices))


def lattice_polytope(points: Iterable[Sequence[int]]) -> LatticePolytope:
    pts = sorted({tuple(int(a) for a in p) for p in points})
    if not pts:
        raise ValueError("empty point set")
    verts = tuple(pts[i] for i in hull.extreme_points(pts))
    return LatticePolytope(tuple(sorted(verts)), tuple(hull.lattice_points(pts)))


def newton_polytope(p: TropPoly) -> LatticePolytope:
    _require_terms(p)
    return lattice_polytope(p.terms.keys())


def homogenize(p: TropPoly, m: int) -> TropPoly:
    """Append a variable carrying the missing degree: exponent e -> (e, m - |e|)."""
    _require_terms(p)
    if m < p.degree:
        raise DegreeTooSmall(f"degree {m} is below the polynomial degree {p.degree}")
    return TropPoly(p.n_vars + 1, {e + (m - sum(e),): c for e, c in p.terms.items()})


def dehomogenize(p: TropPoly) -> TropPoly:
    """Set the last variable to 0 (the inverse of :func:`homogenize`)."""
    if p.n_vars < 2:
        raise ValueError("need at least two variables")
    return slice_restrict(p, {p.n_vars - 1})


def slice_restrict(p: TropPoly, fixed_vars: Iterable[int]) -> TropPoly:
    """Substitute 0 for the given variables; fibre coefficients combine by max."""
    fixed = set(fixed_vars)
    keep = [i for i in range(p.n_vars) if i not in fixed]
    if not keep:
        raise ValueError("cannot fix every variable")
    out: dict[Exponent, Fraction] = {}
    for e, c in p.terms.items():
        key = tuple(e[i] for i in keep)
        if key not in out or c > out[key]:
            out[key] = c
    return TropPoly(len(keep), out)


def permute_variables(p: TropPoly, order: Sequence[int]) -> TropPoly:
    """New variable i is old variable order[i]."""
    return TropPoly(p.n_vars, {tuple(e[j] for j in order): c for e, c in p.terms.items()})


def translate(p: TropPoly, t: Sequence) -> TropPoly:
    """The polynomial x -> p(x + t): coefficient of e becomes c + e.t."""
    return TropPoly(p.n_vars, {e: c + dot(e, t) for e, c in p.terms.items()})


def monomial_multiply(p: TropPoly, shift: Sequence[int], constant=0) -> TropPoly:
    """Tropical product with the monomial constant * x^shift."""
    c0 = as_rational(constant)
    return TropPoly(p.n_vars, {tuple(a + b for a, b in zip(e, shift)): c + c0 for e, c in p.terms.items()})


def add_constant(p: TropPoly, constant) -> TropPoly:
    c0 = as_rational(constant)
    return TropPoly(p.n_vars, {e: c + c0 for e, c in p.terms.items()})


_PLANE_SUPPORT = {(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)}


def normalize_to_standard_plane(f: TropPoly, g: TropPoly) -> tuple[tuple[Fraction, ...], TropPoly]:
    """Translate so that V(f) becomes the standard tropical plane.

    Returns ``(t, g')`` with ``g'(x) = g(x + t)``; ``t`` is the vertex of V(f),
    the point where all four affine forms of f agree.
    """
    if f.n_vars != 3 or set(f.terms) != _PLANE_SUPPORT:
        raise NotAPlane("f must have exactly the support {1, x, y, z}")
    a0 = f.terms[(0, 0, 0)]
    t = tuple(a0 - f.terms[e] for e in [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    return t, translate(g, t)
