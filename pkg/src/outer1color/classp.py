"""The exceptional class P: subcubic graphs grown from the base graph by
pasting G2/G4/G8 gadgets over degree-2 vertices and H(t) chains over edges.
All of them need four colors."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .graph import Graph, build_graph, edge_key, is_connected, max_degree, min_degree
from .oracle import canonical_form, is_isomorphic, isomorphism
from .patterns import Configuration, Template, h_template, iter_matches, template
from .reduction import reduce

PASTE_KINDS = ("G2", "G4", "G8", "H")


class PasteError(ValueError):
    pass


def base_graph() -> Graph:
    """K4 with one edge subdivided: 5 vertices, 7 edges, degrees 3,3,3,3,2.

    This is the smallest 2-connected outer-1-planar graph with Δ = 3 that
    needs four colors (it is overfull: 7 > 3 * floor(5/2)).
    """
    return build_graph(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3)])


def k5_minus_two_adjacent_edges() -> Graph:
    """The literal "K5 - 2e" reading; it has a vertex of degree 4."""
    return build_graph(5, [(0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])


@dataclass(frozen=True)
class PasteOp:
    """One pasting step.

    For G2/G4/G8, ``at`` is the degree-2 vertex ``z`` being replaced and
    ``ends = (z1, z2)`` its neighbours, which become anchors ``x`` and ``y``.
    For H(t), ``ends = (z1, z2)`` is the edge being replaced.
    """

    kind: str
    ends: Tuple[int, int]
    at: Optional[int] = None
    t: Optional[int] = None

    @property
    def label(self) -> str:
        return f"H{self.t}" if self.kind == "H" else self.kind


@dataclass(frozen=True)
class PCertificate:
    """``ops`` replayed in order from ``base`` rebuild the certified graph up to isomorphism."""

    base: Graph
    ops: Tuple[PasteOp, ...]

    def replay(self) -> Graph:
        g = self.base
        for op in self.ops:
            g = paste(g, op)
        return g


def _template_for(kind: str, t: Optional[int]) -> Template:
    return h_template(t) if kind == "H" else template(kind)


def paste(g: Graph, op: PasteOp) -> Graph:
    """Apply one pasting operation and return the new graph.

    Vertex pastes delete ``z`` (later ids shift down by one); new gadget
    vertices are appended in template role order.
    """
    return paste_with_roles(g, op)[0]


def paste_with_roles(g: Graph, op: PasteOp) -> Tuple[Graph, Dict[str, int]]:
    tpl = _template_for(op.kind, op.t)
    z1, z2 = op.ends
    if op.kind == "H":
        if not g.has_edge(z1, z2):
            raise PasteError(f"H{op.t} paste needs an edge, ({z1}, {z2}) is not one")
        keep = list(range(g.n))
        base_edges = [e for e in g.edges if e != edge_key(z1, z2)]
        index = {v: v for v in keep}
    else:
        if op.kind not in ("G2", "G4", "G8"):
            raise PasteError(f"cannot paste {op.kind}")
        z = op.at
        if z is None or not 0 <= z < g.n or g.degree(z) != 2:
            raise PasteError(f"{op.kind} paste needs a degree-2 vertex, got {z}")
        if set(g.adj[z]) != {z1, z2}:
            raise PasteError(f"ends {op.ends} are not the neighbours of {z}")
        index = {v: (v if v < z else v - 1) for v in range(g.n) if v != z}
        base_edges = [(index[a], index[b]) for a, b in g.edges if z not in (a, b)]
    n0 = len(index)
    roles: Dict[str, int] = {"x": index[z1], "y": index[z2]}
    for i, r in enumerate(tpl.internal):
        roles[r] = n0 + i
    edges = list(base_edges) + [edge_key(roles[a], roles[b]) for a, b in tpl.edges]
    return build_graph(n0 + len(tpl.internal), edges), roles


def paste_options(g: Graph, kinds=PASTE_KINDS, t_max: int = 3) -> List[PasteOp]:
    """Every legal paste on ``g`` (both orientations)."""
    ops: List[PasteOp] = []
    for kind in kinds:
        if kind == "H":
            for t in range(1, t_max + 1):
                for a, b in g.edges:
                    ops.append(PasteOp("H", (a, b), t=t))
                    ops.append(PasteOp("H", (b, a), t=t))
        else:
            for z in range(g.n):
                if g.degree(z) == 2:
                    a, b = g.adj[z]
                    ops.append(PasteOp(kind, (a, b), at=z))
                    ops.append(PasteOp(kind, (b, a), at=z))
    return ops


def _added_vertices(op: PasteOp) -> int:
    if op.kind == "H":
        return 2 * op.t + 2
    return len(template(op.kind).internal) - 1


def generate_p(seed: int, op_count: int, max_n: Optional[int] = None, t_max: int = 3) -> Tuple[Graph, PCertificate]:
    """Random member of P built by ``op_count`` pastes from the base graph.

    Deterministic per ``seed``. With ``max_n``, pastes that would exceed it
    are skipped; the walk stops early if none fits. The result need not be
    outer-1-planar.
    """
    if op_count < 0:
        raise ValueError("op_count must be non-negative")
    rng = random.Random(seed)
    g = base_graph()
    done: List[PasteOp] = []
    for _ in range(op_count):
        opts = paste_options(g, t_max=t_max)
        if max_n is not None:
            opts = [op for op in opts if g.n + _added_vertices(op) <= max_n]
        if not opts:
            break
        kind = rng.choice(sorted({op.kind for op in opts}))
        op = rng.choice([o for o in opts if o.kind == kind])
        g = paste(g, op)
        done.append(op)
    return g, PCertificate(base_graph(), tuple(done))


def _reverse_candidates(g: Graph):
    for kind in ("G2", "G4", "G8"):
        for roles in iter_matches(g, template(kind)):
            if roles["x"] != roles["y"]:
                yield Configuration(kind, roles)
    for t in range(1, (g.n - 3) // 2 + 1):
        for roles in iter_matches(g, h_template(t)):
            if roles["x"] != roles["y"] and not g.has_edge(roles["x"], roles["y"]):
                yield Configuration("H", roles, t)


def recognize_p(g: Graph) -> Optional[PCertificate]:
    """Certificate that ``g`` is in P, or None.

    Undoes pastes until the base graph is reached, backtracking over every
    applicable gadget (failed intermediate graphs are memoised by canonical
    form). Graphs that are disconnected or not of Δ = 3, δ = 2 are refused
    at once.
    """
    base = base_graph()
    failed = set()

    def ok(h: Graph) -> bool:
        return h.n >= 5 and max_degree(h) == 3 and min_degree(h) == 2 and is_connected(h)

    def search(h: Graph) -> Optional[List[PasteOp]]:
        if not ok(h):
            return None
        if h.n == 5:
            return [] if is_isomorphic(h, base) else None
        key = canonical_form(h)
        if key in failed:
            return None
        for cfg in _reverse_candidates(h):
            reduced, step = reduce(h, cfg)
            rest = search(reduced)
            if rest is None:
                continue
            x, y = step.new_id[cfg.roles["x"]], step.new_id[cfg.roles["y"]]
            if cfg.kind == "H":
                op = PasteOp("H", (x, y), t=cfg.t)
            else:
                op = PasteOp(cfg.kind, (x, y), at=step.identified[1])
            return rest + [(reduced, op)]
        failed.add(key)
        return None

    found = search(g)
    if found is None:
        return None
    # ``found`` pairs each op with the graph it was read off, innermost first;
    # translate every op onto the labeling produced by replaying its predecessors
    start = found[0][0] if found else g
    cur = start
    ops: List[PasteOp] = []
    for h, op in found:
        phi = isomorphism(h, cur)
        moved = PasteOp(op.kind, (phi[op.ends[0]], phi[op.ends[1]]),
                        at=None if op.at is None else phi[op.at], t=op.t)
        cur = paste(cur, moved)
        ops.append(moved)
    return PCertificate(start, tuple(ops))


def in_class_p(g: Graph) -> bool:
    return recognize_p(g) is not None
