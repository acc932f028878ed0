import random
from itertools import combinations_with_replacement, permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropci.curve import curve_genus, intersection_curve
from tropci.errors import Disconnected
from tropci.skeleton import (
    Genus3Class,
    Multigraph,
    classify_genus3,
    is_lollipop,
    multigraph_genus,
    skeletonize,
    skeletonize_graph,
)
from tropci.trop_core import standard_plane

K4 = Multigraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
LOLLIPOP = Multigraph(4, [(0, 1), (0, 2), (0, 3), (1, 1), (2, 2), (3, 3)])
LOOP_CHAIN = Multigraph(4, [(0, 0), (0, 1), (1, 2), (1, 2), (2, 3), (3, 3)])
THETA_LOOP = Multigraph(4, [(0, 1), (0, 1), (0, 2), (1, 2), (2, 3), (3, 3)])
TWO_BIGON = Multigraph(4, [(0, 1), (0, 1), (1, 2), (0, 3), (2, 3), (2, 3)])


def test_examples():
    assert classify_genus3(K4) is Genus3Class.K4
    assert classify_genus3(LOLLIPOP) is Genus3Class.LOLLIPOP
    assert classify_genus3(LOOP_CHAIN) is Genus3Class.LOOP_CHAIN
    assert classify_genus3(THETA_LOOP) is Genus3Class.THETA_WITH_LOOP
    assert classify_genus3(TWO_BIGON) is Genus3Class.TWO_BIGON_CHAIN
    assert is_lollipop(LOLLIPOP) and not is_lollipop(K4)
    genus2 = Multigraph(2, [(0, 0), (0, 1), (1, 1)])
    assert not is_lollipop(genus2) and classify_genus3(genus2) is Genus3Class.OTHER


def test_chain_of_circles_with_bridges():
    # triangle - bridge - square - bridge - triangle
    edges = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 3), (5, 7), (7, 8), (8, 9), (9, 7)]
    m = Multigraph(10, edges)
    s = skeletonize_graph(m)
    assert s.n == 4 and s.loops() == 2
    assert classify_genus3(m) is Genus3Class.LOOP_CHAIN


def test_central_vertex_with_three_loops_via_bridges():
    edges = [(0, 1), (0, 2), (0, 3)]
    nxt = 4
    for hub in (1, 2, 3):
        edges += [(hub, nxt), (nxt, nxt + 1), (nxt + 1, hub)]
        nxt += 2
    assert classify_genus3(Multigraph(nxt, edges)) is Genus3Class.LOLLIPOP


def test_tree_and_cycle_skeletons():
    tree = Multigraph(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    s = skeletonize_graph(tree)
    assert s.n == 1 and not s.edges and multigraph_genus(s) == 0
    cycle_with_tail = Multigraph(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
    s = skeletonize_graph(cycle_with_tail)
    assert s == Multigraph(1, [(0, 0)])
    assert multigraph_genus(s) == 1
    assert classify_genus3(tree) is Genus3Class.OTHER


def test_genus_examples():
    assert multigraph_genus(K4) == 3
    assert multigraph_genus(Multigraph(1, [(0, 0)])) == 1
    assert multigraph_genus(LOLLIPOP) == 3
    with pytest.raises(Disconnected):
        multigraph_genus(Multigraph(2, []))


def test_curve_skeleton_keeps_genus(smooth_g, smooth_g_t3, smooth_g_deg1):
    for g in (smooth_g, smooth_g_t3, smooth_g_deg1):
        c = intersection_curve(standard_plane(), g)
        s = skeletonize(c)
        assert multigraph_genus(s) == curve_genus(c)
        assert skeletonize_graph(s) == s
    assert classify_genus3(skeletonize(intersection_curve(standard_plane(), smooth_g))) is Genus3Class.K4
    assert classify_genus3(skeletonize(intersection_curve(standard_plane(), smooth_g_t3))) is Genus3Class.TWO_BIGON_CHAIN
    assert skeletonize(intersection_curve(standard_plane(), smooth_g_deg1)).n == 1


@st.composite
def multigraphs(draw):
    n = draw(st.integers(1, 7))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12))
    return Multigraph(n, edges)


@given(multigraphs())
def test_skeletonize_idempotent(m):
    s = skeletonize_graph(m)
    assert skeletonize_graph(s) == s
    if m.n_components() == 1:
        assert multigraph_genus(s) == multigraph_genus(m)


def test_relabel_invariance():
    rng = random.Random(0)
    for m in (K4, LOLLIPOP, LOOP_CHAIN, THETA_LOOP, TWO_BIGON):
        want = classify_genus3(m)
        for _ in range(100):
            perm = list(range(m.n))
            rng.shuffle(perm)
            assert classify_genus3(m.relabel(perm)) is want


def canonical(n, edges):
    best = None
    for perm in permutations(range(n)):
        key = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in edges))
        best = key if best is None or key < best else best
    return best


def test_enumeration_yields_five_classes():
    pairs = [(a, b) for a in range(4) for b in range(a, 4)]
    classes = {}
    for edges in combinations_with_replacement(pairs, 6):
        m = Multigraph(4, edges)
        if any(m.degree(v) != 3 for v in range(4)) or m.n_components() != 1:
            continue
        classes.setdefault(canonical(4, edges), m)
    # two vertices with three edges is genus 2, so every genus-3 trivalent graph has 4 vertices
    assert len(classes) == 5
    labels = {classify_genus3(m) for m in classes.values()}
    assert labels == {
        Genus3Class.K4,
        Genus3Class.TWO_BIGON_CHAIN,
        Genus3Class.THETA_WITH_LOOP,
        Genus3Class.LOOP_CHAIN,
        Genus3Class.LOLLIPOP,
    }
    for m in classes.values():
        assert multigraph_genus(m) == 3


def test_json_roundtrip():
    assert Multigraph.from_json(LOLLIPOP.to_json()) == LOLLIPOP
    assert LOLLIPOP.to_json() == {"vertices": 4, "edges": [[0, 1], [0, 2], [0, 3], [1, 1], [2, 2], [3, 3]]}
    with pytest.raises(ValueError):
        Multigraph(2, [(0, 2)])
