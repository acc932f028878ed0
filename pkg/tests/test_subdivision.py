import json
import random
from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given

from conftest import polys
from tropci import hull
from tropci.errors import DegenerateCell, EmptyPolynomial, WrongDimension
from tropci.subdivision import (
    LiftedConfig,
    Subdivision,
    SubdivCell,
    Verdict,
    brute_force_subdivision,
    cayley_polytope,
    cayley_subdivision,
    cell_volume,
    certify_smooth_ci,
    is_mixed_cell,
    is_unimodular_triangulation,
    regular_subdivision,
    subdivide,
)
from tropci.trop_core import TropPoly, full_support, newton_polytope, standard_plane


def cells_of(s):
    return sorted(c.members for c in s.cells)


def test_flat_triangle_is_one_cell():
    s = regular_subdivision(TropPoly(2, {(1, 0): 0, (0, 1): 0, (0, 0): 0}))
    assert cells_of(s) == [((0, 0), (0, 1), (1, 0))]
    assert is_unimodular_triangulation(s)


def test_raised_corner_splits_square_along_diagonal():
    s = regular_subdivision(TropPoly(2, {(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): 1}))
    assert cells_of(s) == [((0, 0), (0, 1), (1, 1)), ((0, 0), (1, 0), (1, 1))]
    assert all(c.volume() == F(1, 2) for c in s.cells)
    assert is_unimodular_triangulation(s)


def test_square_single_cell_not_unimodular():
    s = regular_subdivision(TropPoly(2, {(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): 0}))
    assert len(s.cells) == 1 and not is_unimodular_triangulation(s)


def test_coplanar_lifts_single_cell():
    # all three lifts lie on z = x + y - 1
    s = regular_subdivision(TropPoly(2, {(1, 0): 0, (0, 1): 0, (0, 0): -1}))
    assert len(s.cells) == 1
    assert s.cells[0].normal == (1, 1) and s.cells[0].offset == -1


def test_lower_dimensional_inputs():
    s = regular_subdivision(TropPoly(2, {(0, 0): 0, (1, 0): -5, (2, 0): 0}))
    assert s.dim == 1 and cells_of(s) == [((0, 0), (2, 0))]
    assert regular_subdivision(TropPoly(2, {(3, 1): 7})).dim == 0
    with pytest.raises(EmptyPolynomial):
        regular_subdivision(TropPoly(2, {}))


def test_cell_volume_examples():
    assert cell_volume([(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)], 4) == F(1, 24)
    assert cell_volume([(0, 0), (2, 1), (1, 3)], 2) == F(5, 2)
    with pytest.raises(DegenerateCell):
        cell_volume([(0, 0), (1, 1), (2, 2)], 2)
    with pytest.raises(WrongDimension):
        cell_volume([(0, 0, 0)], 2)


def test_cayley_point_counts():
    unit = TropPoly(3, {e: 0 for e in full_support(3, 1)})
    assert len(cayley_polytope(newton_polytope(unit), newton_polytope(unit))) == 8
    big = TropPoly(3, {e: 0 for e in full_support(3, 4)})
    pts = cayley_polytope(newton_polytope(unit), newton_polytope(big))
    assert len(pts) == 39
    # volume of the Cayley polytope of P and Q is sum of mixed volumes / 4!
    assert hull.volume(pts) == F(1 + 4 + 16 + 64, 24)


def test_mixed_cell_examples():
    e = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    one_four = SubdivCell(((0, 0, 0, 0),) + tuple(p + (1,) for p in e), (0,) * 4, F(0), 4)
    two_three = SubdivCell(tuple(p + (0,) for p in e[:2]) + tuple(p + (1,) for p in e[:3]), (0,) * 4, F(0), 4)
    three_two = SubdivCell(tuple(p + (0,) for p in e[:3]) + tuple(p + (1,) for p in e[:2]), (0,) * 4, F(0), 4)
    assert not is_mixed_cell(one_four)
    assert is_mixed_cell(two_three) and is_mixed_cell(three_two)


def test_flat_cayley_is_whole_polytope():
    p = standard_plane()
    s = cayley_subdivision(p, p)
    assert len(s.cells) == 1 and len(s.cells[0].members) == 8
    cert = certify_smooth_ci(p, p)
    assert cert.verdict is Verdict.NOT_WEAKLY_SMOOTH
    assert cert.witness.volume() > F(1, 24)


def test_certified_smooth_instance(smooth_g):
    s = cayley_subdivision(standard_plane(), smooth_g)
    assert all(cell_volume(c.members, 4) == F(1, 24) for c in s.cells)
    assert s.total_volume() == F(85, 24)
    cert = certify_smooth_ci(standard_plane(), smooth_g)
    assert cert.verdict is Verdict.SMOOTH and cert.witness is None and not cert.anomalies
    assert cert.n_cells == 85


def test_origin_tie_is_not_weakly_smooth(smooth_g):
    terms = dict(smooth_g.terms)
    top = max(terms.values()) + 1
    terms[(0, 0, 0)] = terms[(1, 0, 0)] = top
    cert = certify_smooth_ci(standard_plane(), TropPoly(3, terms))
    assert cert.verdict is Verdict.NOT_WEAKLY_SMOOTH
    assert is_mixed_cell(cert.witness) and cert.witness.volume() > F(1, 24)
    s = cayley_subdivision(standard_plane(), TropPoly(3, terms))
    # the cell over the tie carries all of the plane's simplex and both tied terms
    big = [c for c in s.cells if {(0, 0, 0, 1), (1, 0, 0, 1), (0, 0, 0, 0)} <= set(c.members)]
    assert big and len(big[0].members) > 5 and big[0].volume() > F(1, 24)


def test_weakly_smooth_only_instance(weak_g):
    cert = certify_smooth_ci(standard_plane(), weak_g)
    assert cert.verdict is Verdict.WEAKLY_SMOOTH_ONLY
    assert not is_mixed_cell(cert.witness)


def test_certify_rejects_wrong_dimension():
    with pytest.raises(WrongDimension):
        certify_smooth_ci(TropPoly(2, {(0, 0): 0}), standard_plane())
    with pytest.raises(WrongDimension):
        certify_smooth_ci(TropPoly(3, {(0, 0, 0): 0, (1, 0, 0): 0}), TropPoly(3, {(0, 0, 0): 0, (1, 0, 0): 1}))


def random_config(rng, dim, n):
    pts = set()
    while len(pts) < n:
        pts.add(tuple(rng.randint(0, 3 if dim > 1 else 12) for _ in range(dim)))
    pts = sorted(pts)
    lifts = [F(rng.randint(-6, 6), rng.choice([1, 1, 2])) for _ in pts]
    return LiftedConfig(tuple(pts), tuple(lifts))


def test_matches_brute_force_oracle():
    rng = random.Random(2024)
    for i in range(50):
        dim = 1 + i % 3
        cfg = random_config(rng, dim, rng.randint(dim + 1, 10))
        assert subdivide(cfg) == brute_force_subdivision(cfg)


def test_partition_of_newton_polytope():
    rng = random.Random(3)
    for i in range(30):
        dim = 2 + i % 2
        cfg = random_config(rng, dim, rng.randint(dim + 2, 12))
        s = subdivide(cfg)
        if s.dim < dim:
            continue
        assert s.total_volume() == hull.volume(list(cfg.points))
        touching = {p for c in s.cells for p in c.members}
        for p, lam in zip(cfg.points, cfg.lifts):
            top = min(c.support_value(p) for c in s.cells)
            assert lam <= top
            assert (lam == top) == (p in touching)


@given(polys(n_vars=2, max_degree=4, min_terms=3))
def test_term_below_hull_leaves_subdivision_unchanged(p):
    s = regular_subdivision(p)
    if s.dim < 2:
        return
    free = [e for e in product(range(5), repeat=2) if sum(e) <= 4 and e not in p.terms]
    cell = s.cells[0]
    inside = [e for e in free if all(f.normal[0] * e[0] + f.normal[1] * e[1] <= f.offset for f in hull.facets(cell.members))]
    if not inside:
        return
    e = inside[0]
    q = TropPoly(2, {**p.terms, e: cell.support_value(e) - 1})
    assert regular_subdivision(q) == s


def test_subdivision_json_roundtrip(smooth_g):
    s = cayley_subdivision(standard_plane(), smooth_g)
    text = json.dumps(s.to_json())
    assert Subdivision.from_json(json.loads(text)) == s
    assert set(s.to_json()) == {"ambient_dim", "cells"}
