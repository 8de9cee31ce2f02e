from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete, cycle, k4_minus_e, path
from outer1color.chroma import (
    NotOuter1PlanarError, UndecidedEmbeddingError, certify_outer1, chromatic_index,
    color_block_delta3, color_cycle_path, merge_block_colorings, vizing_color,
)
from outer1color.classp import PasteOp, base_graph, generate_p, paste
from outer1color.drawing import random_outer1
from outer1color.graph import ColorAssignment, blocks, build_graph, max_degree, subgraph, validate_coloring
from outer1color.oracle import brute_chi, enumerate_small
from outer1color.sweep import insert_gadget, random_graph


def _check(g, r):
    assert validate_coloring(g, r.coloring)
    if r.witness_optimal:
        assert r.coloring.used() <= r.chi
    assert r.classification == (1 if r.chi == r.delta else 2)


def test_k4():
    r = chromatic_index(complete(4))
    assert (r.chi, r.classification) == (3, 1)
    _check(complete(4), r)


def test_base_graph():
    r = chromatic_index(base_graph())
    assert (r.chi, r.classification, r.reason) == (4, 2, "class P")
    _check(base_graph(), r)


def test_k4_minus_e():
    r = chromatic_index(k4_minus_e())
    assert r.chi == 3 and r.coloring.used() == 3
    _check(k4_minus_e(), r)


def test_closed_g4():
    g, _ = insert_gadget(build_graph(1, []), "G4", 0, 0)
    assert max_degree(g) == 3
    r = chromatic_index(g)
    assert r.chi == 3
    _check(g, r)


def test_g2_pasted_on_base_graph():
    g = paste(base_graph(), PasteOp("G2", (0, 1), at=4))
    r = chromatic_index(g)
    assert r.chi == 4 == brute_chi(g)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_cycles(n):
    r = chromatic_index(cycle(n))
    assert r.chi == (3 if n % 2 else 2)
    if n % 2:
        assert r.reason == "odd cycle"
    _check(cycle(n), r)


def test_trivial_graphs():
    assert chromatic_index(build_graph(3, [])).chi == 0
    assert chromatic_index(path(2)).chi == 1
    assert chromatic_index(path(5)).chi == 2


def test_not_outer1_planar():
    with pytest.raises(NotOuter1PlanarError):
        chromatic_index(complete(5))
    # K5 minus one edge has Δ = 4 but is still not outer-1-planar
    g = build_graph(5, [e for e in complete(5).edges if e != (0, 1)])
    with pytest.raises(NotOuter1PlanarError):
        chromatic_index(g)


def test_undecided_without_order():
    g = random_outer1(22, random.Random(4), degree_cap=3).graph
    with pytest.raises(UndecidedEmbeddingError):
        certify_outer1(g, budget=20)


def test_supplied_order_is_validated():
    with pytest.raises(ValueError):
        chromatic_index(complete(4), order=[0, 1, 2])
    d = random_outer1(10, random.Random(1), degree_cap=3)
    r = chromatic_index(d.graph, order=d.order)
    _check(d.graph, r)


def test_two_blocks_one_in_p():
    # B and a triangle sharing vertex 4 (B's degree-2 vertex becomes degree 4)
    b = base_graph()
    g = build_graph(7, list(b.edges) + [(4, 5), (5, 6), (6, 4)])
    r = chromatic_index(g)
    assert r.chi == brute_chi(g) == 4 and r.delta == 4
    # glue a triangle at a degree-3 vertex via a bridge instead: Δ stays 3
    g = build_graph(8, list(b.edges) + [(4, 5), (5, 6), (6, 7), (7, 5)])
    r = chromatic_index(g)
    assert r.chi == brute_chi(g) == 4 and r.p_blocks


def test_color_block_delta3_with_drawing():
    d = random_outer1(9, random.Random(5), degree_cap=3, density=1.0)
    if max_degree(d.graph) == 3 and len(blocks(d.graph).blocks) == 1:
        r = color_block_delta3(d.graph, d)
        assert validate_coloring(d.graph, r.coloring)
        assert r.chi == brute_chi(d.graph)


def _per_block_colorings(g):
    out = []
    for es in blocks(g).blocks:
        sub, originals = subgraph(g, es)
        c = color_cycle_path(sub)
        out.append(ColorAssignment(c.k, {tuple(sorted((originals[u], originals[v]))): col
                                         for (u, v), col in c.colors.items()}))
    return out


def test_merge_star_of_c4_blocks():
    # three C4 blocks hung from centre 0 by bridges: the centre has degree 3
    edges = []
    for i in range(3):
        a = 1 + 4 * i
        edges += [(0, a), (a, a + 1), (a + 1, a + 2), (a + 2, a + 3), (a + 3, a)]
    g = build_graph(13, edges)
    merged = merge_block_colorings(g, _per_block_colorings(g), k=3)
    assert validate_coloring(g, merged) and merged.used() <= 3


def test_merge_refuses_overloaded_cut_vertex():
    # three C4 blocks sharing vertex 0 give it degree 6
    edges = []
    for i in range(3):
        a = 1 + 3 * i
        edges += [(0, a), (a, a + 1), (a + 1, a + 2), (a + 2, 0)]
    g = build_graph(10, edges)
    with pytest.raises(ValueError):
        merge_block_colorings(g, _per_block_colorings(g), k=3)
    merged = merge_block_colorings(g, _per_block_colorings(g))
    assert validate_coloring(g, merged) and merged.used() == 6


def test_color_cycle_path_alternates_on_c4():
    c = color_cycle_path(cycle(4))
    assert c.used() == 2 and validate_coloring(cycle(4), c)
    c = color_cycle_path(cycle(5))
    assert c.used() == 3 and validate_coloring(cycle(5), c)


@pytest.mark.parametrize("g, bound", [(complete(4), 4), (cycle(5), 3), (base_graph(), 4)])
def test_vizing_examples(g, bound):
    c = vizing_color(g)
    assert validate_coloring(g, c) and c.used() <= bound


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 14), st.integers(1, 6))
def test_vizing_property(seed, n, cap):
    g = random_graph(random.Random(seed), n, cap, 0.5)
    c = vizing_color(g)
    assert validate_coloring(g, c)
    assert c.used() <= max_degree(g) + 1


def test_exhaustive_small_agreement():
    """Every connected Δ ≤ 3 outer-1-planar graph on up to 7 vertices."""
    checked = 0
    for g in enumerate_small(7, 3, n_min=2):
        try:
            r = chromatic_index(g)
        except NotOuter1PlanarError:
            continue
        checked += 1
        assert r.chi == brute_chi(g), g.edges
        _check(g, r)
        if r.classification == 2 and r.delta == 3:
            assert r.p_blocks or r.events
    assert checked > 100


@pytest.mark.parametrize("seed", range(10))
def test_random_class_p_members(seed):
    g, _ = generate_p(seed, 4, max_n=14)
    r = chromatic_index(g)
    assert r.chi == 4 and r.reason == "class P"
    _check(g, r)


@pytest.mark.parametrize("seed", range(25))
def test_random_delta3_against_oracle(seed):
    rng = random.Random(seed)
    d = random_outer1(rng.randint(6, 13), rng, degree_cap=3, density=rng.uniform(0.3, 1.0))
    g = d.graph
    r = chromatic_index(g, order=d.order if seed % 2 else None)
    _check(g, r)
    assert r.chi == brute_chi(g)
    assert not r.fallback_used


@pytest.mark.parametrize("seed", range(10))
def test_high_degree(seed):
    rng = random.Random(seed)
    d = random_outer1(rng.randint(5, 9), rng, degree_cap=4, density=1.0)
    g = d.graph
    r = chromatic_index(g, order=d.order)
    _check(g, r)
    if r.delta >= 4:
        assert r.chi == r.delta == brute_chi(g)
