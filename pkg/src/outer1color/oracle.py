"""Ground truth for small graphs: exact chromatic index, coloring
enumeration, canonical forms and exhaustive graph generation."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .graph import ColorAssignment, Edge, Graph, _make, components, edge_key, max_degree


class BudgetExceeded(RuntimeError):
    pass


MAX_ORACLE_EDGES = 40


def k_edge_coloring(g: Graph, k: int, rng: Optional[random.Random] = None,
                    node_budget: Optional[int] = None) -> Optional[ColorAssignment]:
    """A proper edge coloring of ``g`` with colors ``1..k``, or None if none exists.

    Exact backtracking: the next edge is always the uncolored one with the
    fewest available colors (ties by most colored neighbours, then edge
    order), and an edge may open at most one fresh color. With ``rng`` the
    tie-breaks and color order are randomized and the fresh-color rule is
    dropped, so repeated calls sample different colorings.
    Raises :class:`BudgetExceeded` when ``node_budget`` search nodes are spent.
    """
    es = list(g.edges)
    if not es:
        return ColorAssignment(k, {})
    if k < max_degree(g):
        return None
    idx = {e: i for i, e in enumerate(es)}
    nbr_edges: List[List[int]] = []
    for u, v in es:
        lst = [idx[f] for f in g.incident(u) if f != (u, v)] + [idx[f] for f in g.incident(v) if f != (u, v)]
        nbr_edges.append(lst)
    color = [0] * len(es)
    # used[v] = bitmask of colors at vertex v
    used = [0] * g.n
    full = (1 << (k + 1)) - 2
    nodes = 0
    tiebreak = list(range(len(es)))
    if rng is not None:
        rng.shuffle(tiebreak)

    def avail(i: int) -> int:
        u, v = es[i]
        return full & ~(used[u] | used[v])

    def solve(n_colored: int, max_used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise BudgetExceeded(f"edge coloring search exceeded {node_budget} nodes")
        if n_colored == len(es):
            return True
        best = -1
        best_key = None
        for i in range(len(es)):
            if color[i]:
                continue
            a = avail(i)
            if not a:
                return False
            cnt = bin(a).count("1")
            key = (cnt, -sum(1 for j in nbr_edges[i] if color[j]), tiebreak[i])
            if best_key is None or key < best_key:
                best, best_key = i, key
        a = avail(best)
        choices = [c for c in range(1, k + 1) if a >> c & 1]
        if rng is None:
            choices = [c for c in choices if c <= max_used + 1]
        else:
            rng.shuffle(choices)
        u, v = es[best]
        for c in choices:
            color[best] = c
            used[u] |= 1 << c
            used[v] |= 1 << c
            if solve(n_colored + 1, max(max_used, c)):
                return True
            used[u] &= ~(1 << c)
            used[v] &= ~(1 << c)
            color[best] = 0
        return False

    if solve(0, 0):
        return ColorAssignment(k, {e: color[i] for i, e in enumerate(es)})
    return None


def brute_chi(g: Graph) -> int:
    """Exact chromatic index by backtracking with ``k = Δ``, else ``Δ + 1``."""
    if g.m > MAX_ORACLE_EDGES:
        raise BudgetExceeded(f"{g.m} edges exceeds the oracle limit of {MAX_ORACLE_EDGES}")
    d = max_degree(g)
    if d == 0:
        return 0
    if k_edge_coloring(g, d) is not None:
        return d
    return d + 1


def all_colorings(g: Graph, k: int, max_edges: int = 30) -> Iterator[ColorAssignment]:
    """Every proper ``k``-edge-coloring once, lexicographic in sorted edge order."""
    if g.m > max_edges:
        raise BudgetExceeded(f"{g.m} edges exceeds the enumeration limit of {max_edges}")
    es = list(g.edges)
    used = [0] * g.n
    color = [0] * len(es)

    def rec(i: int) -> Iterator[ColorAssignment]:
        if i == len(es):
            yield ColorAssignment(k, dict(zip(es, color)))
            return
        u, v = es[i]
        for c in range(1, k + 1):
            bit = 1 << c
            if (used[u] | used[v]) & bit:
                continue
            used[u] |= bit
            used[v] |= bit
            color[i] = c
            yield from rec(i + 1)
            used[u] &= ~bit
            used[v] &= ~bit
        color[i] = 0

    yield from rec(0)


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------


def _refine(adj: Sequence[Sequence[int]], cells: List[List[int]]) -> List[List[int]]:
    """Coarsest equitable refinement of an ordered partition.

    Each cell is split by neighbour counts into every cell; fragments are
    ordered by their count vector so the result is labeling-invariant.
    """
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        cell_of = {}
        for i, c in enumerate(cells):
            for v in c:
                cell_of[v] = i
        out: List[List[int]] = []
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            sig: Dict[Tuple[int, ...], List[int]] = {}
            for v in c:
                cnt = [0] * len(cells)
                for w in adj[v]:
                    cnt[cell_of[w]] += 1
                sig.setdefault(tuple(cnt), []).append(v)
            if len(sig) > 1:
                changed = True
                for key in sorted(sig):
                    out.append(sig[key])
            else:
                out.append(c)
        cells = out
    return cells


def _canon_connected(g: Graph) -> Tuple[Tuple[Edge, ...], Dict[int, int]]:
    adj = g.adj
    best: List = [None, None]

    def search(cells: List[List[int]]):
        cells = _refine(adj, cells)
        target = None
        for i, c in enumerate(cells):
            if len(c) > 1 and (target is None or len(c) < len(cells[target])):
                target = i
        if target is None:
            label = {c[0]: i for i, c in enumerate(cells)}
            cert = tuple(sorted(edge_key(label[u], label[v]) for u, v in g.edges))
            if best[0] is None or cert < best[0]:
                best[0], best[1] = cert, label
            return
        cell = cells[target]
        for v in cell:
            rest = [w for w in cell if w != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    search([list(range(g.n))])
    return best[0] or (), best[1] or {v: v for v in range(g.n)}


def canonical_labeling(g: Graph) -> Tuple[Tuple[int, Tuple[Edge, ...]], Dict[int, int]]:
    """Certificate ``(n, edges)`` and the vertex map sending ``g`` onto it.

    Connected pieces are canonized by individualization-refinement and laid
    out in sorted order, so disconnected inputs stay cheap.
    """
    parts = []
    for comp in components(g):
        index = {v: i for i, v in enumerate(comp)}
        sub = _make(len(comp), [edge_key(index[u], index[v]) for u, v in g.edges if u in index])
        cert, label = _canon_connected(sub)
        parts.append(((sub.n, cert), comp, label))
    parts.sort(key=lambda p: p[0])
    edges: List[Edge] = []
    mapping: Dict[int, int] = {}
    offset = 0
    for (n, es), comp, label in parts:
        edges.extend((u + offset, v + offset) for u, v in es)
        for i, v in enumerate(comp):
            mapping[v] = label[i] + offset
        offset += n
    return (g.n, tuple(edges)), mapping


def canonical_form(g: Graph) -> Tuple[int, Tuple[Edge, ...]]:
    return canonical_labeling(g)[0]


def isomorphism(g1: Graph, g2: Graph) -> Optional[Dict[int, int]]:
    """A vertex map ``g1 -> g2`` preserving edges, or None."""
    if g1.n != g2.n or g1.m != g2.m or sorted(g1.degrees()) != sorted(g2.degrees()):
        return None
    c1, m1 = canonical_labeling(g1)
    c2, m2 = canonical_labeling(g2)
    if c1 != c2:
        return None
    back = {c: v for v, c in m2.items()}
    return {v: back[c] for v, c in m1.items()}


def canonical_graph(g: Graph) -> Graph:
    n, es = canonical_form(g)
    return _make(n, es)


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.m != g2.m or sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    return canonical_form(g1) == canonical_form(g2)


# ---------------------------------------------------------------------------
# Exhaustive generation
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _connected_level(n: int, cap: int) -> Tuple[Tuple[int, Tuple[Edge, ...]], ...]:
    """Canonical forms of all connected graphs on exactly ``n`` vertices with Δ ≤ cap.

    Every connected graph has a vertex whose removal leaves it connected, so
    extending each graph on ``n - 1`` vertices by one vertex joined to a
    non-empty set of unsaturated vertices reaches all of them.
    """
    if n == 1:
        return ((1, ()),)
    if n == 2:
        return ((2, ((0, 1),)),) if cap >= 1 else ()
    found = set()
    for _, es in _connected_level(n - 1, cap):
        parent = _make(n - 1, es)
        open_vs = [v for v in range(n - 1) if parent.degree(v) < cap]
        for r in range(1, min(cap, len(open_vs)) + 1):
            for nbrs in combinations(open_vs, r):
                child = _make(n, list(es) + [(v, n - 1) for v in nbrs])
                found.add(canonical_form(child))
    return tuple(sorted(found))


def enumerate_small(n_max: int, degree_cap: int, n_min: int = 1) -> Iterator[Graph]:
    """All connected graphs up to isomorphism with ``n_min <= n <= n_max`` and Δ ≤ ``degree_cap``."""
    if n_max > 10:
        raise BudgetExceeded(f"exhaustive enumeration is limited to n <= 10, got {n_max}")
    for n in range(max(1, n_min), n_max + 1):
        for _, es in _connected_level(n, degree_cap):
            yield _make(n, es)


def count_connected(n: int, degree_cap: int) -> int:
    return len(_connected_level(n, degree_cap))
