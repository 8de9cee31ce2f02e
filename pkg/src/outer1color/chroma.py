"""Chromatic index of outer-1-planar graphs with witness colorings.

For Δ = 3 the witness comes from a reduction recursion: find a configuration
in a crossing-minimal drawing, reduce, color the smaller graph, extend.
When a reduced graph needs four colors so does the original: deletions leave
a subgraph, and identifications/joins are forced (every 3-coloring of the
gadget gives its two anchor edges colors that survive the reduction).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .classp import recognize_p
from .drawing import DEFAULT_BUDGET, Drawing, find_embedding, is_valid_outer1
from .graph import ColorAssignment, Edge, Graph, blocks, components, edge_key, max_degree, subgraph
from .oracle import BudgetExceeded, MAX_ORACLE_EDGES, k_edge_coloring
from .patterns import StructureTheoremViolation, find_configuration
from .reduction import inherited_drawing, extend_coloring, reduce

log = logging.getLogger(__name__)

BASE_CASE_N = 6
REEMBED_LIMIT = 12
REEMBED_BUDGET = 200_000
DELETION_KINDS = ("G1", "G3", "G5", "G6", "G7")


class NotOuter1PlanarError(ValueError):
    def __init__(self, block: Sequence[Edge], explored: int):
        super().__init__(f"block with edges {list(block)} has no outer-1-plane drawing "
                         f"(exhaustive search, {explored} nodes)")
        self.block = tuple(block)
        self.explored = explored


class UndecidedEmbeddingError(RuntimeError):
    pass


class _WitnessUnavailable(Exception):
    pass


@dataclass
class ChromaResult:
    chi: int
    classification: int  # 1 if chi == Δ, else 2
    coloring: ColorAssignment
    witness_optimal: bool
    delta: int
    reason: str = ""
    trace: List[str] = field(default_factory=list)
    events: List[str] = field(default_factory=list)
    fallback_used: bool = False
    p_blocks: List[int] = field(default_factory=list)


@dataclass
class _Ctx:
    embed_budget: int = DEFAULT_BUDGET
    reembed_limit: int = REEMBED_LIMIT
    known: Dict[Tuple[int, Tuple[Edge, ...]], Drawing] = field(default_factory=dict)
    trace: List[str] = field(default_factory=list)
    events: List[str] = field(default_factory=list)
    fallback: bool = False


# ---------------------------------------------------------------------------
# Elementary colorings
# ---------------------------------------------------------------------------


def color_cycle_path(g: Graph) -> ColorAssignment:
    """Paths and even cycles alternate two colors; odd cycles use a third."""
    if max_degree(g) > 2:
        raise ValueError("color_cycle_path needs maximum degree <= 2")
    colors: Dict[Edge, int] = {}
    for comp in components(g):
        if len(comp) < 2:
            continue
        ends = [v for v in comp if g.degree(v) == 1]
        start = ends[0] if ends else comp[0]
        walk = [start]
        prev, cur = None, start
        while True:
            nxt = [w for w in g.adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            walk.append(cur)
            if cur == start:
                break
        steps = list(zip(walk, walk[1:]))
        for i, (a, b) in enumerate(steps):
            colors[edge_key(a, b)] = 1 + i % 2
        if not ends and len(steps) % 2 == 1:
            colors[edge_key(*steps[-1])] = 3
    k = max(colors.values(), default=1)
    return ColorAssignment(max(k, 1), colors)


def vizing_color(g: Graph) -> ColorAssignment:
    """Proper coloring with at most Δ + 1 colors (Misra-Gries fan rotation)."""
    k = max_degree(g) + 1
    col: Dict[Edge, int] = {}
    at: List[Dict[int, int]] = [dict() for _ in range(g.n)]  # at[v][color] = neighbour

    def free(v: int) -> int:
        return next(c for c in range(1, k + 1) if c not in at[v])

    def paint(u: int, v: int, c: int):
        col[edge_key(u, v)] = c
        at[u][c] = v
        at[v][c] = u

    def wipe(u: int, v: int) -> int:
        c = col.pop(edge_key(u, v))
        del at[u][c]
        del at[v][c]
        return c

    def is_fan(x: int, fan: List[int], upto: int) -> bool:
        for j in range(1, upto + 1):
            e = edge_key(x, fan[j])
            if e not in col or col[e] in at[fan[j - 1]]:
                return False
        return True

    for x, f in g.edges:
        fan = [f]
        seen = {f}
        grown = True
        while grown:
            grown = False
            for w in g.adj[x]:
                e = edge_key(x, w)
                if w not in seen and e in col and col[e] not in at[fan[-1]]:
                    fan.append(w)
                    seen.add(w)
                    grown = True
                    break
        c = free(x)
        d = free(fan[-1])
        if c != d:
            path = []
            cur, want = x, d
            while want in at[cur]:
                nxt = at[cur][want]
                path.append((cur, nxt, want))
                cur = nxt
                want = c if want == d else d
            for a, b, _ in path:
                wipe(a, b)
            for a, b, old in path:
                paint(a, b, c if old == d else d)
        for i, w in enumerate(fan):
            if d not in at[w] and is_fan(x, fan, i):
                break
        else:
            raise AssertionError("no fan vertex with the inverted color free")
        for j in range(i):
            shifted = wipe(x, fan[j + 1])
            paint(x, fan[j], shifted)
        paint(x, fan[i], d)
    return ColorAssignment(k, col)


def merge_block_colorings(g: Graph, per_block: Sequence[ColorAssignment], k: Optional[int] = None) -> ColorAssignment:
    """Combine block colorings (aligned with ``blocks(g).blocks``) into one.

    Blocks are visited along the block-cut tree; each block's palette is
    permuted so its colors at the cut vertex it hangs from avoid the colors
    already present there.
    """
    dec = blocks(g)
    if len(per_block) != len(dec.blocks):
        raise ValueError(f"expected {len(dec.blocks)} block colorings, got {len(per_block)}")
    if k is None:
        k = max([max_degree(g)] + [c.k for c in per_block])
    colors: Dict[Edge, int] = {}
    done = [False] * len(dec.blocks)
    for root in range(len(dec.blocks)):
        if done[root]:
            continue
        queue = [(root, None)]
        done[root] = True
        while queue:
            b, via = queue.pop(0)
            own = per_block[b]
            perm = {c: c for c in range(1, k + 1)}
            if via is not None:
                taken = {colors[e] for e in g.incident(via) if e in colors}
                mine = sorted({own[e] for e in g.incident(via) if e in own.colors})
                spare = [c for c in range(1, k + 1) if c not in taken]
                if len(spare) < len(mine):
                    raise ValueError(f"cut vertex {via} needs {len(taken) + len(mine)} colors, only {k} allowed")
                perm = dict(zip(mine, spare))
                rest_src = [c for c in range(1, k + 1) if c not in perm]
                rest_dst = [c for c in range(1, k + 1) if c not in perm.values()]
                perm.update(zip(rest_src, rest_dst))
            for e in dec.blocks[b]:
                colors[e] = perm[own[e]]
            for cv in dec.tree.get(("b", b), ()):
                for nb in dec.tree[("c", cv)]:
                    if not done[nb]:
                        done[nb] = True
                        queue.append((nb, cv))
    return ColorAssignment(k, colors)


# ---------------------------------------------------------------------------
# Δ = 3 recursion
# ---------------------------------------------------------------------------


def _sub_drawing(d: Optional[Drawing], sub: Graph, originals: List[int]) -> Optional[Drawing]:
    if d is None:
        return None
    index = {v: i for i, v in enumerate(originals)}
    return Drawing(sub, tuple(index[v] for v in d.order if v in index))


def _color3(g: Graph, ctx: _Ctx, drawing: Optional[Drawing] = None) -> Optional[ColorAssignment]:
    """A proper 3-edge-coloring of a Δ ≤ 3 outer-1-planar graph, or None if it needs 4."""
    if g.m == 0:
        return ColorAssignment(3, {})
    if max_degree(g) <= 2:
        c = color_cycle_path(g)
        return ColorAssignment(3, c.colors)
    dec = blocks(g)
    per_block = []
    for es in dec.blocks:
        sub, originals = subgraph(g, es)
        if max_degree(sub) <= 2:
            cb = color_cycle_path(sub)
        else:
            cb = _color_block(sub, ctx, _sub_drawing(drawing, sub, originals))
            if cb is None:
                return None
        per_block.append(ColorAssignment(3, {edge_key(originals[a], originals[b]): c
                                             for (a, b), c in cb.colors.items()}))
    return merge_block_colorings(g, per_block, 3)


def _fallback(g: Graph, ctx: _Ctx, why: str) -> Optional[ColorAssignment]:
    ctx.fallback = True
    ctx.events.append(f"fallback on n={g.n} m={g.m}: {why}")
    log.info("fallback: %s", why)
    if g.m <= MAX_ORACLE_EDGES:
        try:
            return k_edge_coloring(g, 3, node_budget=2_000_000)
        except BudgetExceeded:
            pass
    raise _WitnessUnavailable(why)


def _color_block(g: Graph, ctx: _Ctx, drawing: Optional[Drawing] = None) -> Optional[ColorAssignment]:
    if g.n <= BASE_CASE_N:
        c = k_edge_coloring(g, 3)
        ctx.trace.append(f"base n={g.n} m={g.m}: {'3-colored' if c else 'needs 4'}")
        return c
    d, minimal = None, False
    if g.n <= ctx.reembed_limit:
        r = find_embedding(g, ctx.embed_budget)
        d, minimal = r.drawing, r.optimal
    if d is None:
        d = drawing or ctx.known.get((g.n, g.edges))
    if d is None:
        d = find_embedding(g, ctx.embed_budget, minimal=False).drawing
        if d is None:
            return _fallback(g, ctx, "reduced graph could not be embedded")
    try:
        cfg = find_configuration(d)
    except StructureTheoremViolation as exc:
        if minimal:
            return _fallback(g, ctx, str(exc))
        # only crossing-minimal drawings are guaranteed to carry a configuration
        r = find_embedding(g, ctx.embed_budget)
        if r.drawing is None or r.drawing.order == d.order:
            return _fallback(g, ctx, str(exc))
        d = r.drawing
        try:
            cfg = find_configuration(d)
        except StructureTheoremViolation as exc2:
            return _fallback(g, ctx, str(exc2))
    tpl = cfg.template
    if tpl.needs_distinct_anchors and cfg.anchors_equal:
        if cfg.kind == "H":
            ctx.trace.append(f"{cfg.label} closed at x=y: graph is in P")
            return None
        return _fallback(g, ctx, f"{cfg.label} with x=y on {g.n} vertices")
    reduced, step = reduce(g, cfg)
    ctx.trace.append(step.describe())
    c_reduced = _color3(reduced, ctx, inherited_drawing(d, cfg))
    if c_reduced is None:
        if cfg.kind in DELETION_KINDS:
            # a subgraph needs 4 colors, so g does too; the oracle double-checks when affordable
            ctx.events.append(f"proof-gap: {cfg.label} deletion left a 4-chromatic graph "
                              f"(host n={g.n}, edges={list(g.edges)})")
            if g.m <= MAX_ORACLE_EDGES:
                return k_edge_coloring(g, 3)
        return None
    return extend_coloring(step, c_reduced)


def color_block_delta3(g: Graph, d: Optional[Drawing] = None, embed_budget: int = DEFAULT_BUDGET) -> ChromaResult:
    """Run the reduction recursion on a 2-connected Δ = 3 graph."""
    if max_degree(g) != 3:
        raise ValueError("color_block_delta3 needs maximum degree 3")
    ctx = _Ctx(embed_budget=min(embed_budget, REEMBED_BUDGET))
    c = _color_block(g, ctx, d)
    if c is not None:
        return ChromaResult(3, 1, c, True, 3, "", ctx.trace, ctx.events, ctx.fallback)
    return ChromaResult(4, 2, vizing_color(g), True, 3, "needs 4 colors", ctx.trace, ctx.events, ctx.fallback)


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def certify_outer1(g: Graph, order: Optional[Sequence[int]] = None,
                   budget: int = DEFAULT_BUDGET) -> Dict[Tuple[int, Tuple[Edge, ...]], Drawing]:
    """Confirm ``g`` is outer-1-planar and return drawings of its blocks.

    A supplied order is checked directly. Otherwise every block is searched
    for some valid drawing (a graph is outer-1-planar iff all its blocks
    are). Drawings are keyed by the block graph ``(n, edges)``.
    """
    found: Dict[Tuple[int, Tuple[Edge, ...]], Drawing] = {}
    if order is not None:
        d = Drawing(g, tuple(order))
        verdict = is_valid_outer1(d)
        if not verdict:
            raise ValueError(f"supplied order is not an outer-1-plane drawing: {verdict.reason}")
        for es in blocks(g).blocks:
            sub, originals = subgraph(g, es)
            found[(sub.n, sub.edges)] = _sub_drawing(d, sub, originals)
        return found
    for es in blocks(g).blocks:
        sub, _ = subgraph(g, es)
        if sub.n < 4:
            continue
        r = find_embedding(sub, budget, minimal=False)
        if r.embeddable is False:
            raise NotOuter1PlanarError(es, r.explored)
        if r.embeddable is None:
            raise UndecidedEmbeddingError(f"embedding search for a block on {sub.n} vertices ran out of budget "
                                          f"({budget} nodes); supply an order")
        found[(sub.n, sub.edges)] = r.drawing
    return found


def _p_blocks(g: Graph) -> List[int]:
    out = []
    for i, es in enumerate(blocks(g).blocks):
        sub, _ = subgraph(g, es)
        if max_degree(sub) == 3 and recognize_p(sub) is not None:
            out.append(i)
    return out


def chromatic_index(g: Graph, order: Optional[Sequence[int]] = None, embed_budget: int = DEFAULT_BUDGET,
                    witness_budget: int = 2_000_000) -> ChromaResult:
    """Chromatic index of an outer-1-planar graph with a proper witness coloring.

    Raises :class:`NotOuter1PlanarError` or :class:`UndecidedEmbeddingError`
    when outer-1-planarity cannot be confirmed.
    """
    known = certify_outer1(g, order, embed_budget)
    delta = max_degree(g)
    if g.m == 0:
        return ChromaResult(0, 1, ColorAssignment(1, {}), True, 0, "edgeless")
    if delta <= 2:
        c = color_cycle_path(g)
        if c.used() == 3:
            return ChromaResult(3, 2, c, True, delta, "odd cycle")
        return ChromaResult(delta, 1, c, True, delta, "path or even cycle" if delta == 2 else "matching")
    if delta >= 4:
        return _chi_high_degree(g, delta, witness_budget)
    ctx = _Ctx(embed_budget=min(embed_budget, REEMBED_BUDGET), known=known)
    try:
        c = _color3(g, ctx)
        undecided = False
    except _WitnessUnavailable:
        c, undecided = None, True
    if c is not None:
        return ChromaResult(3, 1, c, True, 3, "no block in P", ctx.trace, ctx.events, ctx.fallback)
    pb = _p_blocks(g)
    witness = vizing_color(g)
    if undecided:
        # the recursion gave up; decide by membership in P
        if pb:
            return ChromaResult(4, 2, witness, True, 3, "class P", ctx.trace, ctx.events, True, pb)
        return ChromaResult(3, 1, witness, False, 3, "no block in P (witness not found)",
                            ctx.trace, ctx.events, True, pb)
    if not pb:
        ctx.events.append("4-chromatic graph with no block recognized in P")
    return ChromaResult(4, 2, witness, True, 3, "class P" if pb else "needs 4 colors",
                        ctx.trace, ctx.events, ctx.fallback, pb)


def _chi_high_degree(g: Graph, delta: int, witness_budget: int) -> ChromaResult:
    try:
        c = k_edge_coloring(g, delta, node_budget=witness_budget)
    except BudgetExceeded:
        return ChromaResult(delta, 1, vizing_color(g), False, delta, "Δ >= 4", fallback_used=True)
    if c is None:
        return ChromaResult(delta + 1, 2, vizing_color(g), True, delta, "Δ >= 4 but no Δ-coloring exists",
                            events=["exhaustive search found no Δ-coloring for Δ >= 4"])
    return ChromaResult(delta, 1, c, True, delta, "Δ >= 4")
