import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from tropci.feasibility import exact_feasible, halfplanes_to_vertices, satisfies
from tropci.linalg import solve


def test_examples():
    w = exact_feasible(strict_ineqs=[((1, 0), 0), ((0, 1), 0)])
    assert w is not None and w[0] < 0 and w[1] < 0
    assert exact_feasible(strict_ineqs=[((-1, 0), 0), ((1, 0), 0)]) is None
    # touching closed half-planes meet only in a line
    assert exact_feasible(weak_ineqs=[((-1, 0), 0), ((1, 0), 0)]) is not None
    assert exact_feasible(strict_ineqs=[((1, 0), 0)], weak_ineqs=[((-1, 0), 0)]) is None
    assert exact_feasible(n_vars=2) == (0, 0)
    with pytest.raises(ValueError):
        exact_feasible()


def arrangement_oracle(strict, weak, box=200):
    """Feasible iff some sample point from the arrangement (vertices, edge
    midpoints, cell centroids of the boxed arrangement) satisfies the system."""
    lines = [(tuple(F(x) for x in a), F(b)) for a, b in list(strict) + list(weak) if any(a)]
    lines += [((1, 0), F(box)), ((1, 0), F(-box)), ((0, 1), F(box)), ((0, 1), F(-box))]
    verts = set()
    for (a1, b1), (a2, b2) in combinations(lines, 2):
        sol = solve([a1, a2], [b1, b2])
        if sol is not None:
            verts.add(sol)
    verts = sorted(verts)
    samples = list(verts)
    samples += [tuple((p + q) / 2 for p, q in zip(u, v)) for u, v in combinations(verts, 2)]
    samples += [tuple((p + q + r) / 3 for p, q, r in zip(u, v, w)) for u, v, w in combinations(verts, 3)]
    return any(satisfies(x, strict, weak) for x in samples)


def random_system(rng, n):
    def one():
        return (rng.randint(-3, 3), rng.randint(-3, 3)), rng.randint(-5, 5)

    k = rng.randint(0, n)
    return [one() for _ in range(k)], [one() for _ in range(n - k)]


def test_planar_systems_against_arrangement_oracle():
    rng = random.Random(11)
    feasible_seen = infeasible_seen = 0
    for _ in range(120):
        strict, weak = random_system(rng, rng.randint(1, 5))
        w = exact_feasible(strict, weak, n_vars=2)
        assert (w is not None) == arrangement_oracle(strict, weak)
        if w is not None:
            assert satisfies(w, strict, weak)
            feasible_seen += 1
        else:
            infeasible_seen += 1
    assert feasible_seen and infeasible_seen


def test_three_variable_witnesses():
    rng = random.Random(5)
    for _ in range(80):
        strict = [((rng.randint(-2, 2), rng.randint(-2, 2), rng.randint(-2, 2)), rng.randint(-3, 3)) for _ in range(4)]
        w = exact_feasible(strict, n_vars=3)
        if w is not None:
            assert satisfies(w, strict)
    # the open simplex x, y, z > 0, x + y + z < 1
    simplex = [((-1, 0, 0), 0), ((0, -1, 0), 0), ((0, 0, -1), 0), ((1, 1, 1), 1)]
    assert satisfies(exact_feasible(simplex), simplex)
    assert exact_feasible(simplex[:3] + [((1, 1, 1), 0)]) is None


def test_halfplanes_to_vertices():
    pts, rays = halfplanes_to_vertices([((1, 0), 0), ((0, 1), 0)])
    assert pts == [(0, 0)] and rays == [(-1, 0), (0, -1)]
    tri = [((-1, 0), 0), ((0, -1), 0), ((1, 1), 1)]
    pts, rays = halfplanes_to_vertices(tri)
    assert sorted(pts) == [(0, 0), (0, 1), (1, 0)] and rays == []
    pts, rays = halfplanes_to_vertices([((0, 1), 2)])
    assert pts == [(0, 2)] and sorted(rays) == [(-1, 0), (0, -1), (1, 0)]
