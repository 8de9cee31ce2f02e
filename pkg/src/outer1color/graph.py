"""Simple undirected graphs, block decomposition and edge-coloring checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

Edge = Tuple[int, int]


class GraphError(ValueError):
    """Raised when an edge list does not describe a simple graph."""


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``0..n-1``; edges are sorted pairs.

    Instances are immutable. Use :func:`build_graph` to construct one from an
    untrusted edge list.
    """

    n: int
    edges: Tuple[Edge, ...]
    adj: Tuple[Tuple[int, ...], ...] = field(repr=False, compare=False)
    _edge_set: FrozenSet[Edge] = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> List[int]:
        return [len(a) for a in self.adj]

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._edge_set

    def incident(self, v: int) -> List[Edge]:
        return [edge_key(v, w) for w in self.adj[v]]

    def __iter__(self):
        return iter(self.edges)


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Validate ``edge_list`` and return the graph it describes.

    Raises :class:`GraphError` naming the offending pair on a self-loop, a
    repeated edge or an out-of-range vertex id.
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    seen = set()
    for pair in edge_list:
        if len(pair) != 2:
            raise GraphError(f"edge {tuple(pair)!r} is not a pair")
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has a vertex id outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop ({u}, {v})")
        e = edge_key(u, v)
        if e in seen:
            raise GraphError(f"duplicate edge ({u}, {v})")
        seen.add(e)
    return _make(n, seen)


def _make(n: int, edges: Iterable[Edge]) -> Graph:
    es = tuple(sorted(edges))
    nbrs: List[List[int]] = [[] for _ in range(n)]
    for u, v in es:
        nbrs[u].append(v)
        nbrs[v].append(u)
    adj = tuple(tuple(sorted(a)) for a in nbrs)
    return Graph(n, es, adj, frozenset(es))


def max_degree(g: Graph) -> int:
    return max((len(a) for a in g.adj), default=0)


def min_degree(g: Graph) -> int:
    return min((len(a) for a in g.adj), default=0)


def relabel(g: Graph, mapping: Dict[int, int], n: Optional[int] = None) -> Graph:
    """Image of ``g`` under an injective vertex map (vertices absent from the map are dropped)."""
    if n is None:
        n = len(mapping)
    edges = [edge_key(mapping[u], mapping[v]) for u, v in g.edges if u in mapping and v in mapping]
    return _make(n, edges)


def induced_edges(g: Graph, vertices: Iterable[int]) -> List[Edge]:
    vs = set(vertices)
    return [e for e in g.edges if e[0] in vs and e[1] in vs]


def subgraph(g: Graph, edges: Iterable[Edge]) -> Tuple[Graph, List[int]]:
    """Subgraph spanned by ``edges``, densely re-indexed.

    Returns the subgraph and ``originals`` where ``originals[i]`` is the id in
    ``g`` of new vertex ``i``.
    """
    es = sorted(edges)
    originals = sorted({v for e in es for v in e})
    index = {v: i for i, v in enumerate(originals)}
    return _make(len(originals), [edge_key(index[u], index[v]) for u, v in es]), originals


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def components(g: Graph) -> List[List[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [s], [s]
        while stack:
            v = stack.pop()
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks (edge sets, bridges included) and cut vertices of a graph.

    ``blocks[i]`` is a sorted tuple of edges; ``block_vertices[i]`` its sorted
    vertex set. ``tree`` is the block-cut tree as adjacency between block
    indices and cut vertices: ``tree[("b", i)]`` lists cut vertices of block
    ``i`` and ``tree[("c", v)]`` lists the blocks containing cut vertex ``v``.
    """

    blocks: Tuple[Tuple[Edge, ...], ...]
    block_vertices: Tuple[Tuple[int, ...], ...]
    cut_vertices: FrozenSet[int]
    tree: Dict[Tuple[str, int], Tuple[int, ...]]


def blocks(g: Graph) -> BlockDecomposition:
    """Biconnected components by the Hopcroft-Tarjan edge-stack method.

    Blocks are ordered by their smallest vertex id, ties by smallest edge.
    Isolated vertices belong to no block.
    """
    n = g.n
    disc = [-1] * n
    low = [0] * n
    found: List[List[Edge]] = []
    cuts = set()
    time = 0
    for root in range(n):
        if disc[root] != -1 or not g.adj[root]:
            continue
        disc[root] = low[root] = time
        time += 1
        edge_stack: List[Edge] = []
        # iterative DFS: frames of (vertex, parent, neighbor iterator index)
        stack = [(root, -1, 0)]
        root_children = 0
        while stack:
            v, parent, i = stack[-1]
            nbrs = g.adj[v]
            if i < len(nbrs):
                stack[-1] = (v, parent, i + 1)
                w = nbrs[i]
                if disc[w] == -1:
                    edge_stack.append(edge_key(v, w))
                    disc[w] = low[w] = time
                    time += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, 0))
                elif w != parent and disc[w] < disc[v]:
                    edge_stack.append(edge_key(v, w))
                    low[v] = min(low[v], disc[w])
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent != root:
                    cuts.add(parent)
                comp = []
                target = edge_key(parent, v)
                while True:
                    e = edge_stack.pop()
                    comp.append(e)
                    if e == target:
                        break
                found.append(sorted(comp))
        if root_children > 1:
            cuts.add(root)
    found.sort(key=lambda es: (min(min(e) for e in es), es[0]))
    bverts = tuple(tuple(sorted({x for e in es for x in e})) for es in found)
    tree: Dict[Tuple[str, int], List[int]] = {}
    for i, vs in enumerate(bverts):
        cs = [v for v in vs if v in cuts]
        tree[("b", i)] = cs
        for c in cs:
            tree.setdefault(("c", c), []).append(i)
    return BlockDecomposition(
        blocks=tuple(tuple(es) for es in found),
        block_vertices=bverts,
        cut_vertices=frozenset(cuts),
        tree={k: tuple(v) for k, v in tree.items()},
    )


def is_biconnected(g: Graph) -> bool:
    """True for connected graphs on >= 3 vertices with no cut vertex."""
    if g.n < 3 or any(not a for a in g.adj):
        return False
    return len(blocks(g).blocks) == 1


# ---------------------------------------------------------------------------
# Edge colorings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ColorAssignment:
    """Edge coloring with colors drawn from ``1..k``."""

    k: int
    colors: Dict[Edge, int]

    def __getitem__(self, e: Edge) -> int:
        return self.colors[edge_key(*e)]

    def used(self) -> int:
        """Number of distinct colors actually used."""
        return len(set(self.colors.values()))

    def as_rows(self) -> List[Tuple[int, int, int]]:
        return [(u, v, c) for (u, v), c in sorted(self.colors.items())]


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""
    detail: Tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def validate_coloring(g: Graph, c: ColorAssignment) -> Verdict:
    """Check that ``c`` properly colors every edge of ``g`` from ``1..k``."""
    for e in g.edges:
        if e not in c.colors:
            return Verdict(False, "uncolored edge", (e,))
        col = c.colors[e]
        if not isinstance(col, int) or not 1 <= col <= c.k:
            return Verdict(False, f"color {col!r} outside 1..{c.k}", (e,))
    extra = set(c.colors) - set(g.edges)
    if extra:
        return Verdict(False, "colored pair is not an edge", (min(extra),))
    for v in range(g.n):
        owner: Dict[int, Edge] = {}
        for e in g.incident(v):
            col = c.colors[e]
            if col in owner:
                return Verdict(False, f"edges share color {col} at vertex {v}", (owner[col], e))
            owner[col] = e
    return Verdict(True)
