import random
from fractions import Fraction as F
from itertools import permutations, product
from math import factorial

from hypothesis import given
from hypothesis import strategies as st

from tropci import hull
from tropci.linalg import affine_rank, det, integer_normalize, nullspace, rank, solve


def leibniz(m):
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = (-1) ** inv
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total


small = st.integers(-4, 4)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_leibniz(m):
    assert det(m) == leibniz(m)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=5))
def test_rank_nullity(rows):
    ns = nullspace(rows, 3)
    assert rank(rows) + len(ns) == 3
    for v in ns:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


def test_solve_and_normalize():
    assert solve([[2, 1], [1, 3]], [3, 4]) == (1, 1)
    assert solve([[1, 1], [2, 2]], [1, 2]) is None
    assert integer_normalize([F(2, 3), F(-4, 3)], F(1, 3)) == ((1, -2), (F(1, 2),))
    assert affine_rank([(0, 0), (1, 1), (2, 2)]) == 1


def monotone_chain(pts):
    pts = sorted(set(pts))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def shoelace(poly):
    return abs(sum(F(a[0] * b[1] - b[0] * a[1]) for a, b in zip(poly, poly[1:] + poly[:1]))) / 2


def test_planar_hull_against_monotone_chain():
    rng = random.Random(7)
    for _ in range(60):
        pts = list({(rng.randint(0, 6), rng.randint(0, 6)) for _ in range(rng.randint(3, 10))})
        if affine_rank(pts) < 2:
            continue
        ref = monotone_chain(pts)
        assert sorted(pts[i] for i in hull.extreme_points(pts)) == sorted(ref)
        assert hull.volume(pts) == shoelace(ref)
        brute = [
            q for q in product(range(7), repeat=2)
            if all(f.normal[0] * q[0] + f.normal[1] * q[1] <= f.offset for f in hull.facets(pts))
        ]
        assert hull.lattice_points(pts) == sorted(brute)


def test_simplex_volume_and_fan_triangulation_3d():
    cube = list(product((0, 1), repeat=3))
    assert hull.volume(cube) == 1
    tris = hull.fan_triangulation(cube)
    assert sum(hull.simplex_volume([cube[i] for i in s]) for s in tris) == 1
    assert hull.simplex_volume([(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]) == F(1, 24)
    tet = [(0, 0, 0), (4, 0, 0), (0, 4, 0), (0, 0, 4)]
    assert hull.volume(tet) == F(64, factorial(3))
    assert len(hull.lattice_points(tet)) == 35
    assert len(hull.facets(tet)) == 4


def test_lower_dimensional_lattice_points():
    seg = [(0, 0, 0), (2, 2, 2)]
    assert hull.lattice_points(seg) == [(0, 0, 0), (1, 1, 1), (2, 2, 2)]
    assert hull.extreme_points([(0, 0), (1, 1), (3, 3)]) == [0, 2]
