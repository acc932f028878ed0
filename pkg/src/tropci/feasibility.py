"""Exact feasibility of mixed strict/weak linear inequality systems by
Fourier-Motzkin elimination, and planar H-to-V conversion."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import dot, integer_normalize, rank, solve

# (a, b, strict) encodes a.x < b when strict, a.x <= b otherwise
Constraint = tuple[tuple[Fraction, ...], Fraction, bool]


def _canon(a: Sequence, b, strict: bool) -> Constraint:
    a = tuple(Fraction(x) for x in a)
    b = Fraction(b)
    piv = next((abs(x) for x in a if x != 0), None)
    if piv is None:
        return a, b, strict
    return tuple(x / piv for x in a), b / piv, strict


def _dedupe(cons: Iterable[Constraint]) -> list[Constraint]:
    # keep the tightest bound per direction; strict wins ties
    best: dict[tuple, tuple[Fraction, bool]] = {}
    for a, b, s in cons:
        cur = best.get(a)
        if cur is None or b < cur[0] or (b == cur[0] and s and not cur[1]):
            best[a] = (b, s)
    return [(a, b, s) for a, (b, s) in best.items()]


def _solve(cons: list[Constraint], n: int) -> tuple[Fraction, ...] | None:
    if n == 0:
        for _, b, s in cons:
            if (s and not b > 0) or (not s and b < 0):
                return None
        return ()
    k = n - 1
    upper, lower, rest = [], [], []
    for a, b, s in cons:
        c = a[k]
        if c > 0:
            upper.append((tuple(x / c for x in a[:k]), b / c, s))
        elif c < 0:
            lower.append((tuple(x / -c for x in a[:k]), b / -c, s))
        else:
            rest.append((a[:k], b, s))
    # upper: a'.x' + x_k <= b ; lower: a'.x' - x_k <= b
    derived = list(rest)
    for au, bu, su in upper:
        for al, bl, sl in lower:
            derived.append(_canon([p + q for p, q in zip(au, al)], bu + bl, su or sl))
    sub = _solve(_dedupe(derived), k)
    if sub is None:
        return None
    his = [(bu - dot(au, sub), su) for au, bu, su in upper]
    los = [(dot(al, sub) - bl, sl) for al, bl, sl in lower]
    hi = min(his, key=lambda t: (t[0], not t[1])) if his else None
    lo = max(los, key=lambda t: (t[0], t[1])) if los else None
    if hi and lo:
        x = lo[0] if lo[0] == hi[0] else (lo[0] + hi[0]) / 2
    elif hi:
        x = hi[0] - 1
    elif lo:
        x = lo[0] + 1
    else:
        x = Fraction(0)
    return sub + (x,)


def exact_feasible(
    strict_ineqs: Sequence[tuple[Sequence, object]] = (),
    weak_ineqs: Sequence[tuple[Sequence, object]] = (),
    n_vars: int | None = None,
) -> tuple[Fraction, ...] | None:
    """Witness point satisfying every ``a.x < b`` and ``a.x <= b``, or None.

    Constraints are pairs ``(a, b)``. The dimension is taken from the first
    constraint unless ``n_vars`` is given.
    """
    cons = [_canon(a, b, True) for a, b in strict_ineqs] + [_canon(a, b, False) for a, b in weak_ineqs]
    if n_vars is None:
        if not cons:
            raise ValueError("cannot infer dimension of an empty system")
        n_vars = len(cons[0][0])
    if any(len(a) != n_vars for a, _, _ in cons):
        raise ValueError("constraints of mixed dimension")
    return _solve(_dedupe(cons), n_vars)


def satisfies(x: Sequence, strict_ineqs=(), weak_ineqs=()) -> bool:
    return all(dot(a, x) < b for a, b in strict_ineqs) and all(dot(a, x) <= b for a, b in weak_ineqs)


def _primitive(v: Sequence) -> tuple[int, ...]:
    return integer_normalize(v)[0]


def halfplanes_to_vertices(ineqs: Sequence[tuple[Sequence, object]]) -> tuple[list[tuple], list[tuple[int, ...]]]:
    """V-representation (points, primitive rays) of a nonempty closed planar
    polyhedron ``{x : a.x <= b}``. A polyhedron containing a line lists both
    opposite rays and one base point per boundary line."""
    cons = [(tuple(Fraction(c) for c in a), Fraction(b)) for a, b in ineqs if any(c != 0 for c in a)]
    if not cons:
        return [(Fraction(0), Fraction(0))], [(1, 0), (-1, 0), (0, 1), (0, -1)]
    normals = [a for a, _ in cons]
    r = rank(normals)

    def inside(x):
        return all(dot(a, x) <= b for a, b in cons)

    if r == 2:
        pts = set()
        for i in range(len(cons)):
            for j in range(i + 1, len(cons)):
                sol = solve([cons[i][0], cons[j][0]], [cons[i][1], cons[j][1]])
                if sol is not None and inside(sol):
                    pts.add(sol)
        rays = set()
        for a, _ in cons:
            for d in ((-a[1], a[0]), (a[1], -a[0])):
                if all(dot(n, d) <= 0 for n in normals):
                    rays.add(_primitive(d))
        return sorted(pts), sorted(rays)
    n = normals[0]
    perp = _primitive((-n[1], n[0]))
    nn = dot(n, n)
    lo, hi = None, None
    for a, b in cons:
        lam = next(x / y for x, y in zip(a, n) if y != 0)
        bound = b / lam / nn
        if lam > 0:
            hi = bound if hi is None else min(hi, bound)
        else:
            lo = bound if lo is None else max(lo, bound)
    pts = [tuple(t * c for c in n) for t in (lo, hi) if t is not None]
    pts = sorted(set(pts))
    rays = [perp, tuple(-c for c in perp)]
    if hi is None:
        rays.append(_primitive(n))
    if lo is None:
        rays.append(_primitive(tuple(-c for c in n)))
    return pts, sorted(rays)
