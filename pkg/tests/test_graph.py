from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cycle, k4_minus_e, path, triangle
from outer1color.graph import (
    ColorAssignment, GraphError, blocks, build_graph, components, edge_key,
    is_biconnected, max_degree, min_degree, validate_coloring,
)
from outer1color.oracle import k_edge_coloring


@st.composite
def graphs(draw, max_n: int = 8):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(n, chosen)


def test_build_k4_minus_e():
    g = k4_minus_e()
    assert g.n == 4 and g.m == 5
    assert g.has_edge(2, 0) and not g.has_edge(1, 3)


@pytest.mark.parametrize("n, edges, word", [
    (3, [(0, 1), (1, 1)], "self-loop"),
    (5, [(0, 1), (0, 1)], "duplicate"),
    (5, [(0, 1), (1, 0)], "duplicate"),
    (3, [(0, 3)], "vertex"),
])
def test_build_rejects(n, edges, word):
    with pytest.raises(GraphError) as err:
        build_graph(n, edges)
    assert word in str(err.value)


def test_degrees():
    assert max_degree(k4_minus_e()) == 3
    assert min_degree(k4_minus_e()) == 2
    assert max_degree(cycle(5)) == 2
    assert max_degree(build_graph(3, [])) == 0


def test_blocks_examples():
    bowtie = build_graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
    bd = blocks(bowtie)
    assert len(bd.blocks) == 2 and bd.cut_vertices == {2}

    bd = blocks(cycle(6))
    assert len(bd.blocks) == 1 and not bd.cut_vertices

    bd = blocks(path(3))
    assert len(bd.blocks) == 2 and bd.cut_vertices == {1}
    assert all(len(b) == 1 for b in bd.blocks)


def test_blocks_deterministic_order():
    g = build_graph(6, [(4, 5), (3, 4), (3, 5), (0, 1), (1, 2), (0, 2), (2, 3)])
    bd = blocks(g)
    firsts = [min(vs) for vs in bd.block_vertices]
    assert firsts == sorted(firsts)


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_degree_sum(g):
    assert sum(g.degrees()) == 2 * g.m


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_blocks_match_networkx(g):
    bd = blocks(g)
    all_edges = [e for b in bd.blocks for e in b]
    assert sorted(all_edges) == sorted(g.edges)
    assert len(set(all_edges)) == len(all_edges)

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    expected = sorted(sorted(edge_key(*e) for e in comp) for comp in nx.biconnected_component_edges(h))
    assert sorted(sorted(b) for b in bd.blocks) == expected
    assert set(bd.cut_vertices) == set(nx.articulation_points(h))
    if g.n >= 3 and nx.is_connected(h):
        assert is_biconnected(g) == nx.is_biconnected(h)
    assert len(components(g)) == nx.number_connected_components(h)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=7))
def test_blocks_share_only_cut_vertices(g):
    bd = blocks(g)
    for a, b in combinations(bd.block_vertices, 2):
        shared = set(a) & set(b)
        assert len(shared) <= 1
        assert shared <= set(bd.cut_vertices)


def test_validate_triangle():
    g = triangle()
    good = ColorAssignment(3, {(0, 1): 1, (1, 2): 2, (0, 2): 3})
    assert validate_coloring(g, good)
    bad = ColorAssignment(3, {(0, 1): 1, (1, 2): 2, (0, 2): 2})
    v = validate_coloring(g, bad)
    assert not v
    assert set(v.detail) == {(1, 2), (0, 2)}


def test_validate_missing_and_range():
    g = triangle()
    assert not validate_coloring(g, ColorAssignment(3, {(0, 1): 1, (1, 2): 2}))
    assert not validate_coloring(g, ColorAssignment(3, {(0, 1): 1, (1, 2): 2, (0, 2): 4}))


def test_validate_oracle_coloring_of_k4_minus_e():
    g = k4_minus_e()
    c = k_edge_coloring(g, 3)
    assert c is not None and validate_coloring(g, c)


def _double_loop(g, colors, k):
    if set(colors) != set(g.edges) or any(not 1 <= c <= k for c in colors.values()):
        return False
    for e, f in combinations(g.edges, 2):
        if set(e) & set(f) and colors[e] == colors[f]:
            return False
    return True


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_validate_matches_double_loop(data):
    g = data.draw(graphs(max_n=8))
    k = data.draw(st.integers(1, 4))
    colors = {e: data.draw(st.integers(0, k + 1)) for e in g.edges}
    if g.edges and data.draw(st.booleans()):
        colors.pop(g.edges[0])
    assert bool(validate_coloring(g, ColorAssignment(k, colors))) == _double_loop(g, colors, k)
