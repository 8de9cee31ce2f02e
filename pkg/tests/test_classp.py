from __future__ import annotations

import pytest

from conftest import complete, cycle, k4_minus_e
from outer1color.chroma import NotOuter1PlanarError, chromatic_index
from outer1color.classp import (
    PasteError, PasteOp, base_graph, generate_p, in_class_p, k5_minus_two_adjacent_edges,
    paste, recognize_p,
)
from outer1color.drawing import find_embedding
from outer1color.graph import is_biconnected, max_degree, min_degree
from outer1color.oracle import brute_chi, enumerate_small, is_isomorphic


def test_base_graph_shape():
    b = base_graph()
    assert (b.n, b.m) == (5, 7)
    assert sorted(b.degrees()) == [2, 3, 3, 3, 3]
    assert is_biconnected(b) and find_embedding(b).drawing is not None
    assert brute_chi(b) == 4


def test_k5_minus_two_edges_is_not_cubic():
    g = k5_minus_two_adjacent_edges()
    assert max_degree(g) == 4 and brute_chi(g) == 4


def test_paste_g2_on_base_graph():
    g = paste(base_graph(), PasteOp("G2", (0, 1), at=4))
    assert g.n == 7 and max_degree(g) == 3 and min_degree(g) == 2
    assert brute_chi(g) == 4


def test_paste_h1_across_edge():
    g = paste(base_graph(), PasteOp("H", (0, 2), t=1))
    assert g.n == 9 and max_degree(g) == 3


def test_paste_errors():
    with pytest.raises(PasteError):
        paste(base_graph(), PasteOp("G2", (0, 1), at=0))
    with pytest.raises(PasteError):
        paste(base_graph(), PasteOp("H", (0, 1), t=1))
    with pytest.raises(PasteError):
        paste(base_graph(), PasteOp("G5", (0, 1), at=4))


def test_generate_single_g2_paste_is_class_2():
    for seed in range(20):
        g, cert = generate_p(seed, 1)
        if cert.ops[0].kind == "G2":
            assert brute_chi(g) == 4
            return
    pytest.fail("no G2 paste among 20 seeds")


def test_generate_is_reproducible():
    assert generate_p(5, 3) == generate_p(5, 3)


@pytest.mark.parametrize("seed", range(60))
def test_round_trip(seed):
    g, cert = generate_p(seed, seed % 9, max_n=16)
    assert max_degree(g) == 3 and min_degree(g) == 2
    assert is_isomorphic(cert.replay(), g)
    found = recognize_p(g)
    assert found is not None
    assert is_isomorphic(found.replay(), g)


def test_refusals():
    for g in (complete(4), k4_minus_e(), cycle(5), k5_minus_two_adjacent_edges()):
        assert recognize_p(g) is None
    assert in_class_p(base_graph())


def test_agreement_with_oracle_n7():
    """Δ = 3, 2-connected, outer-1-planar: in P iff four colors are needed."""
    seen = 0
    for g in enumerate_small(7, 3, n_min=4):
        if max_degree(g) != 3 or not is_biconnected(g) or find_embedding(g).drawing is None:
            continue
        seen += 1
        assert (recognize_p(g) is not None) == (brute_chi(g) == 4), g.edges
    assert seen > 20


def test_generated_members_need_four_colors_in_pipeline():
    g, _ = generate_p(3, 2)
    try:
        r = chromatic_index(g)
    except NotOuter1PlanarError:
        pytest.fail("P members are outer-1-planar")
    assert r.chi == 4


def test_some_members_are_not_outer_1_planar():
    g, _ = generate_p(106, 3, max_n=14)
    assert find_embedding(g, minimal=False).embeddable is False
    assert recognize_p(g) is not None and brute_chi(g) == 4
    with pytest.raises(NotOuter1PlanarError):
        chromatic_index(g)
