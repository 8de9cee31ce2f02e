"""Outer-1-plane drawings as cyclic vertex orders.

A drawing places every vertex on a circle; an edge is a straight chord.
Two edges cross exactly when their endpoints interleave around the circle,
so everything here is combinatorial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from .graph import Edge, Graph, Verdict, build_graph, edge_key, is_biconnected

DEFAULT_BUDGET = 10**6


class DrawingError(ValueError):
    pass


@dataclass(frozen=True)
class Drawing:
    """``order[i]`` is the vertex at clockwise position ``i``."""

    graph: Graph
    order: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.order) != list(range(self.graph.n)):
            raise DrawingError(f"order {list(self.order)} is not a permutation of 0..{self.graph.n - 1}")

    @property
    def pos(self) -> Dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def is_chord(self, e: Edge) -> bool:
        p = self.pos
        n = self.graph.n
        d = abs(p[e[0]] - p[e[1]])
        return d not in (1, n - 1)

    def segment(self, i: int, j: int) -> List[int]:
        """Vertices from ``i`` clockwise to ``j`` inclusive (all vertices when ``i == j``)."""
        p = self.pos
        n = self.graph.n
        a, b = p[i], p[j]
        if a == b:
            return [self.order[(a + k) % n] for k in range(n)]
        length = (b - a) % n
        return [self.order[(a + k) % n] for k in range(length + 1)]


def interleave(pos: Dict[int, int], e: Edge, f: Edge) -> bool:
    """True iff chords ``e`` and ``f`` cross; chords sharing an endpoint never do."""
    if e[0] in f or e[1] in f:
        return False
    a, b = pos[e[0]], pos[e[1]]
    if a > b:
        a, b = b, a
    c, d = pos[f[0]], pos[f[1]]
    return (a < c < b) != (a < d < b)


def crossing_pairs(d: Drawing) -> Set[Tuple[Edge, Edge]]:
    """All crossing edge pairs ``(e, f)`` with ``e < f``."""
    pos = d.pos
    es = d.graph.edges
    out = set()
    for i, e in enumerate(es):
        for f in es[i + 1:]:
            if interleave(pos, e, f):
                out.add((e, f))
    return out


def crossing_partner(d: Drawing) -> Dict[Edge, List[Edge]]:
    partner: Dict[Edge, List[Edge]] = {e: [] for e in d.graph.edges}
    for e, f in crossing_pairs(d):
        partner[e].append(f)
        partner[f].append(e)
    return partner


def is_valid_outer1(d: Drawing) -> Verdict:
    """Every edge crossed at most once; otherwise report an offending edge."""
    partner = crossing_partner(d)
    for e in d.graph.edges:
        if len(partner[e]) >= 2:
            return Verdict(False, f"edge {e} is crossed {len(partner[e])} times", (e, tuple(sorted(partner[e]))))
    return Verdict(True)


@dataclass(frozen=True)
class EmbedResult:
    drawing: Optional[Drawing]
    crossings: int
    optimal: bool
    explored: int

    @property
    def embeddable(self) -> Optional[bool]:
        if self.drawing is not None:
            return True
        return False if self.optimal else None


_NONE = float("inf")


class _Search:
    """Branch and bound over linear orders with vertex 0 first.

    Each new vertex lands after everything already placed, so when ``v`` is
    placed the only crossings decided are between an edge ``vw`` that just
    closed and an edge still open (one end placed): they cross iff the open
    edge's placed end lies after ``w``. Edges that are fully placed never
    gain crossings later.

    For 2-connected graphs the outer boundary between circle neighbours runs
    through at most one crossing, so a vertex ``q`` may follow ``p`` only if
    they are adjacent or an edge ``pa`` crosses an edge ``qb`` (see
    :meth:`_may_follow`).

    Subtrees are memoised: the placed set, the order of the placed ends of
    open edges, which open edges are already crossed, the last vertex and
    the second vertex (for the reflection rule) fix everything below a node.
    The memo keeps a lower bound on the crossings still to come.
    """

    def __init__(self, g: Graph, budget: int, memo: bool = True, minimal: bool = True):
        self.g = g
        self.n = g.n
        self.budget = budget
        self.minimal = minimal
        self.neighbour_rule = g.n >= 4 and is_biconnected(g)
        self.eid = {e: i for i, e in enumerate(g.edges)}
        self.inc = [[(w, self.eid[edge_key(v, w)]) for w in g.adj[v]] for v in range(g.n)]
        self.cross = [0] * g.m
        self.open: Dict[int, int] = {}  # open edge -> its placed end
        self.pos = [-1] * g.n
        self.placed_mask = 0
        self.order: List[int] = []
        self.total = 0
        self.best = None
        self.best_order: Optional[Tuple[int, ...]] = None
        self.explored = 0
        self.explored_before = 0
        self.exhausted = False
        self.memo: Optional[Dict[tuple, float]] = {} if memo else None

    def _place(self, v: int):
        """Place ``v`` next; ``ok`` is False if some edge gets a second crossing."""
        pos = self.pos
        pos[v] = len(self.order)
        self.order.append(v)
        self.placed_mask |= 1 << v
        cross = self.cross
        opened = self.open
        closing = [(w, e) for w, e in self.inc[v] if pos[w] >= 0]
        for _, e in closing:
            del opened[e]
        log = []
        ok = True
        for w, e in closing:
            pw = pos[w]
            for f, c in opened.items():
                if c != w and pos[c] > pw:
                    cross[e] += 1
                    cross[f] += 1
                    log.append((e, f))
                    if cross[e] > 1 or cross[f] > 1:
                        ok = False
        self.total += len(log)
        fresh = [e for w, e in self.inc[v] if pos[w] < 0]
        for e in fresh:
            opened[e] = v
        return ok, (log, closing, fresh)

    def _unplace(self, v: int, undo):
        log, closing, fresh = undo
        for e in fresh:
            del self.open[e]
        for e, f in log:
            self.cross[e] -= 1
            self.cross[f] -= 1
        self.total -= len(log)
        for w, e in closing:
            self.open[e] = w
        self.placed_mask &= ~(1 << v)
        self.pos[v] = -1
        self.order.pop()

    def _key(self) -> tuple:
        pos = self.pos
        ends = sorted({c for c in self.open.values()}, key=lambda c: pos[c])
        crossed = 0
        for f in self.open:
            if self.cross[f]:
                crossed |= 1 << f
        return self.placed_mask, tuple(ends), crossed, self.order[-1], self.order[1] if len(self.order) > 1 else -1

    def _may_follow(self, p: int, q: int) -> bool:
        """Necessary condition for ``q`` directly after ``p``.

        Either ``pq`` is an edge or some ``pa`` crosses some ``qb``. If ``b``
        is placed that crossing is decided by the placed vertices and checked
        as usual. If ``a`` and ``b`` are both unplaced, any placed neighbour
        of ``q`` would give a second crossing on ``pa``, and any placed
        neighbour of ``a`` other than ``p`` a second one on ``qb``.
        """
        g = self.g
        if g.has_edge(p, q):
            return True
        pos = self.pos
        q_placed = [b for b in g.adj[q] if pos[b] >= 0]
        for a, e in self.inc[p]:
            if a == q:
                continue
            if any(b != a for b in q_placed):
                return True
            if pos[a] >= 0 or q_placed or self.cross[e]:
                continue
            if any(pos[c] >= 0 and c != p for c in g.adj[a]):
                continue
            if any(b != a for b in g.adj[q]):
                return True
        return False

    def run(self):
        if self.n == 0:
            self.best, self.best_order = 0, ()
            return
        ok, undo = self._place(0)
        self._dfs()
        self._unplace(0, undo)

    def _dfs(self):
        if self.exhausted:
            return
        self.explored += 1
        if self.explored > self.budget:
            self.exhausted = True
            return
        n = self.n
        if len(self.order) == n:
            if n >= 3 and self.order[1] > self.order[-1]:
                return
            if self.best is None or self.total < self.best:
                self.best = self.total
                self.best_order = tuple(self.order)
            return
        if n >= 3 and len(self.order) >= 2:
            # reflection symmetry: the last vertex must exceed the second one
            second = self.order[1]
            if not any(self.pos[w] < 0 and w > second for w in range(n)):
                return
        key = None
        if self.memo is not None:
            key = self._key()
            bound = self.memo.get(key)
            if bound is not None and (bound == _NONE or (self.best is not None and self.total + bound >= self.best)):
                return
        entry = self.total
        last = self.order[-1]
        if self.minimal:
            candidates = range(1, n)
        else:
            # any drawing will do: walk along edges first
            near = [w for w in self.g.adj[last] if self.pos[w] < 0]
            candidates = near + [w for w in range(1, n) if self.pos[w] < 0 and w not in near]
        for v in candidates:
            if self.pos[v] >= 0:
                continue
            if self.neighbour_rule and not self._may_follow(last, v):
                continue
            ok, undo = self._place(v)
            if ok and (self.best is None or self.total < self.best):
                self._dfs()
            self._unplace(v, undo)
            if self.exhausted or self.best == 0 or (self.best is not None and not self.minimal):
                return
        if key is not None:
            self.memo[key] = _NONE if self.best is None else self.best - entry


def find_embedding(g: Graph, budget: int = DEFAULT_BUDGET, memo: bool = True, minimal: bool = True) -> EmbedResult:
    """Minimum-crossing outer-1-plane drawing of ``g``, if one exists.

    Among optimal drawings the lexicographically smallest order (vertex 0
    first, ``order[1] < order[-1]``) is returned. ``optimal`` is False when
    the node budget ran out; in that case a drawing may still be returned
    but is not known to be minimal. With ``minimal=False`` the search stops
    at the first valid drawing, which settles embeddability only.
    """
    s = _Search(g, budget, memo, minimal)
    if minimal and g.n >= 8:
        # a quick first drawing bounds the exact search
        quick = _Search(g, budget, memo, minimal=False)
        quick.run()
        if quick.best_order is None and not quick.exhausted:
            return EmbedResult(None, 0, True, quick.explored)
        if quick.best is not None:
            s.best = quick.best + 1
        s.budget = max(budget - quick.explored, 0)
        s.explored_before = quick.explored
    s.run()
    explored = s.explored + s.explored_before
    optimal = not s.exhausted and (minimal or s.best_order is None or s.best == 0)
    if s.best_order is None:
        if minimal and g.n >= 8 and quick.best_order is not None:
            return EmbedResult(Drawing(g, quick.best_order), quick.best, False, explored)
        return EmbedResult(None, 0, not s.exhausted, explored)
    return EmbedResult(Drawing(g, s.best_order), s.best, optimal, explored)


def count_crossings(d: Drawing) -> int:
    return len(crossing_pairs(d))


def check_lemma1(d: Drawing, i: int, j: int) -> Verdict:
    """Check the segment ``V[i, j]`` is a non-edge or a path when the lemma applies.

    Returns a verdict whose ``reason`` is ``"non-edge"``, ``"path"``,
    ``"inapplicable"`` (preconditions fail) or ``"violated"``.
    """
    g = d.graph
    if i == j or not is_biconnected(g) or not is_valid_outer1(d):
        return Verdict(False, "inapplicable")
    seg = d.segment(i, j)
    inner = set(seg[1:-1])
    inside = set(seg)
    outside_inner = set(range(g.n)) - inside
    pos = d.pos
    seg_chords = [e for e in g.edges if e[0] in inside and e[1] in inside and d.is_chord(e)]
    for a in range(len(seg_chords)):
        for b in range(a + 1, len(seg_chords)):
            e, f = seg_chords[a], seg_chords[b]
            if interleave(pos, e, f):
                return Verdict(False, "inapplicable", (e, f))
    for u, v in g.edges:
        if (u in inner and v in outside_inner) or (v in inner and u in outside_inner):
            return Verdict(False, "inapplicable", ((u, v),))
    if len(seg) == 2 and not g.has_edge(seg[0], seg[1]):
        return Verdict(True, "non-edge")
    if all(g.has_edge(seg[k], seg[k + 1]) for k in range(len(seg) - 1)):
        return Verdict(True, "path")
    return Verdict(False, "violated", tuple(seg))


def patched_drawing(d: Drawing, graph: Graph, new_id: Dict[int, int]) -> Optional[Drawing]:
    """Order of ``graph`` induced from ``d`` by dropping vertices and renaming.

    ``new_id`` maps each surviving old vertex to its id in ``graph``; several
    old ids may share one new id if they end up consecutive on the circle.
    Returns None if the result is not a permutation of ``graph``'s vertices.
    """
    order: List[int] = []
    for v in d.order:
        if v not in new_id:
            continue
        w = new_id[v]
        if order and order[-1] == w:
            continue
        order.append(w)
    if len(order) > 1 and order[0] == order[-1]:
        order.pop()
    if sorted(order) != list(range(graph.n)):
        return None
    return Drawing(graph, tuple(order))


def random_outer1(n: int, rng: random.Random, degree_cap: Optional[int] = None,
                  density: float = 1.0, closed: bool = True) -> Drawing:
    """Random outer-1-plane drawing on ``n`` vertices.

    Vertices get a random circular order and are joined along it (a
    Hamiltonian path, or cycle when ``closed``); then every other pair is
    offered once in random order and kept with probability ``density`` if
    it respects ``degree_cap`` and crosses at most one chord that is itself
    still uncrossed.
    """
    if n < 1:
        raise ValueError("n must be positive")
    order = list(range(n))
    rng.shuffle(order)
    pos = {v: i for i, v in enumerate(order)}
    deg = [0] * n
    edges: List[Edge] = []
    crossings: Dict[Edge, int] = {}
    cap = degree_cap if degree_cap is not None else n

    def room(a: int, b: int) -> bool:
        return deg[a] < cap and deg[b] < cap

    def add(a: int, b: int):
        e = edge_key(a, b)
        edges.append(e)
        crossings[e] = 0
        deg[a] += 1
        deg[b] += 1

    for i in range(n - 1):
        if room(order[i], order[i + 1]):
            add(order[i], order[i + 1])
    if closed and n >= 3 and room(order[-1], order[0]):
        add(order[-1], order[0])
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n) if (pos[a] - pos[b]) % n not in (1, n - 1)]
    rng.shuffle(pairs)
    for a, b in pairs:
        if not room(a, b) or rng.random() >= density:
            continue
        hit = [f for f in edges if interleave(pos, (a, b), f)]
        if len(hit) > 1 or (hit and crossings[hit[0]]):
            continue
        add(a, b)
        for f in hit:
            crossings[f] += 1
            crossings[edge_key(a, b)] += 1
    return Drawing(build_graph(n, edges), tuple(order))
