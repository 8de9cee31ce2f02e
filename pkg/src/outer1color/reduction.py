"""Graph reductions for configurations and the inverse color extensions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Tuple

from .drawing import Drawing, is_valid_outer1, patched_drawing
from .graph import ColorAssignment, Edge, Graph, _make, edge_key, validate_coloring
from .patterns import Configuration

PALETTE = (1, 2, 3)


class SpecialCase(Exception):
    """The configuration's anchors coincide, so it describes the whole graph."""

    def __init__(self, cfg: Configuration):
        super().__init__(f"{cfg.label} with x = y = {cfg.roles['x']}")
        self.cfg = cfg


class ExtensionError(RuntimeError):
    pass


@dataclass(frozen=True)
class ReductionStep:
    """Everything needed to lift a coloring of ``reduced`` back to ``original``.

    ``new_id`` maps each surviving original vertex to its reduced id; the two
    identified vertices (if any) share the id ``identified[1]``.
    """

    cfg: Configuration
    original: Graph
    reduced: Graph
    new_id: Dict[int, int]
    removed_vertices: FrozenSet[int]
    removed_edges: FrozenSet[Edge]
    identified: Optional[Tuple[Tuple[int, int], int]] = None
    added_edge: Optional[Edge] = None  # in original ids

    @property
    def kind(self) -> str:
        return self.cfg.kind

    @property
    def roles(self) -> Dict[str, int]:
        return self.cfg.roles

    def describe(self) -> str:
        roles = " ".join(f"{r}={v}" for r, v in self.cfg.roles.items())
        return f"{self.cfg.label}[{roles}] n {self.original.n}->{self.reduced.n}, m {self.original.m}->{self.reduced.m}"


def _surgery(g: Graph, cfg: Configuration):
    tpl = cfg.template
    r = cfg.roles
    removed = {r[name] for name in tpl.removed}
    merge = None
    if tpl.contract is not None:
        a, b = r[tpl.contract[0]], r[tpl.contract[1]]
        merge = (a, b) if a < b else (b, a)
    survivors = [v for v in range(g.n) if v not in removed and (merge is None or v != merge[1])]
    new_id = {v: i for i, v in enumerate(survivors)}
    if merge is not None:
        new_id[merge[1]] = new_id[merge[0]]
    dropped_edge = None
    if tpl.delete_edge is not None:
        dropped_edge = edge_key(r[tpl.delete_edge[0]], r[tpl.delete_edge[1]])
    edges = set()
    removed_edges = set()
    for e in g.edges:
        if e == dropped_edge or e[0] in removed or e[1] in removed:
            removed_edges.add(e)
            continue
        a, b = new_id[e[0]], new_id[e[1]]
        if a == b:
            removed_edges.add(e)
            continue
        edges.add(edge_key(a, b))
    added = None
    if tpl.bridge:
        added = edge_key(r["x"], r["y"])
        edges.add(edge_key(new_id[added[0]], new_id[added[1]]))
    reduced = _make(len(survivors), edges)
    return reduced, new_id, frozenset(removed), frozenset(removed_edges), merge, added


def reduce(g: Graph, cfg: Configuration) -> Tuple[Graph, ReductionStep]:
    """Apply the reduction for ``cfg`` and return the reduced graph with its step.

    G1 drops the edge ``uv``; G3, G5, G6, G7 delete their inner vertices;
    G2, G4, G8 delete inner vertices and identify the two vertices carrying
    the anchor edges into a new degree-2 vertex; H(t) deletes the gadget and
    joins ``x`` to ``y``. Reduced vertices are re-indexed densely in
    increasing order of original id.
    """
    tpl = cfg.template
    if tpl.needs_distinct_anchors and cfg.anchors_equal:
        raise SpecialCase(cfg)
    if tpl.bridge and g.has_edge(cfg.roles["x"], cfg.roles["y"]):
        raise ValueError(f"H{cfg.t}: anchors {cfg.roles['x']} and {cfg.roles['y']} are already adjacent")
    reduced, new_id, removed, removed_edges, merge, added = _surgery(g, cfg)
    identified = None
    if merge is not None:
        identified = (merge, new_id[merge[0]])
    step = ReductionStep(cfg, g, reduced, new_id, removed, removed_edges, identified, added)
    return reduced, step


def inherited_drawing(d: Drawing, cfg: Configuration) -> Optional[Drawing]:
    """Drawing of the reduced graph obtained by editing ``d``, if it is valid.

    Deleted vertices leave the circle; identified vertices must be neighbours
    on the circle once the deleted ones are gone.
    """
    reduced, new_id, *_ = _surgery(d.graph, cfg)
    out = patched_drawing(d, reduced, new_id)
    return out if out is not None and is_valid_outer1(out) else None


def invert_indexing(step: ReductionStep, reduced_vertex: int) -> Tuple[int, ...]:
    """Original vertices represented by a reduced vertex (two for the identified one)."""
    found = tuple(sorted(v for v, w in step.new_id.items() if w == reduced_vertex))
    if not found:
        raise KeyError(f"vertex {reduced_vertex} is not in the reduced graph")
    return found


# ---------------------------------------------------------------------------
# Color extension
# ---------------------------------------------------------------------------

# Tables give, per boundary case, symbolic colors 1..3 for the configuration's
# edges. "same"/"diff" refer to the two boundary edges named in BOUNDARY.
# G5 lists the edge the source tables leave uncolored (u0v0 in the equal
# case, u1u2 in the distinct case); its color is the only one that fits.
BOUNDARY: Dict[str, Tuple[Tuple[str, str], Tuple[str, str]]] = {
    "G2": (("v", "x"), ("w", "y")),
    "G3": (("x", "x1"), ("y", "y1")),
    "G4": (("u1", "x"), ("v1", "y")),
    "G5": (("u2", "x"), ("v2", "y")),
    "G6": (("u2", "x"), ("v1", "y")),
    "G7": (("u2", "x"), ("v2", "y")),
    "G8": (("u2", "x"), ("v1", "y")),
}

TABLES: Dict[str, Dict[str, Dict[Tuple[str, str], int]]] = {
    "G2": {
        "diff": {("u", "w"): 1, ("u", "v"): 2, ("v", "w"): 3},
    },
    "G3": {
        "same": {("u", "x"): 2, ("v", "y"): 2, ("v", "x"): 3, ("u", "y"): 3},
        "diff": {("v", "y"): 1, ("u", "x"): 2, ("v", "x"): 3, ("u", "y"): 3},
    },
    "G4": {
        "diff": {("u0", "w"): 1, ("v0", "v1"): 1, ("u0", "u1"): 2, ("w", "v0"): 2,
                 ("u0", "v1"): 3, ("u1", "v0"): 3},
    },
    "G5": {
        "same": {("u0", "u1"): 1, ("v0", "v1"): 1, ("u1", "u2"): 2, ("v1", "v2"): 2,
                 ("u0", "v2"): 3, ("u2", "v0"): 3, ("u0", "v0"): 2},
        "diff": {("u0", "v2"): 1, ("v0", "v1"): 1, ("u0", "v0"): 2, ("u0", "u1"): 3,
                 ("v1", "v2"): 3, ("u2", "v0"): 3, ("u1", "u2"): 2},
    },
    "G6": {
        "same": {("u0", "u1"): 1, ("w", "v0"): 1, ("u1", "u2"): 2, ("u0", "w"): 2,
                 ("v0", "v1"): 2, ("u0", "v1"): 3, ("u2", "v0"): 3},
        "diff": {("u0", "u1"): 1, ("v0", "v1"): 1, ("u0", "w"): 2, ("u2", "v0"): 2,
                 ("w", "v0"): 3, ("u1", "u2"): 3, ("u0", "v1"): 3},
    },
    "G7": {
        "same": {("u0", "u1"): 1, ("v0", "v1"): 1, ("u0", "w"): 2, ("u2", "v0"): 2,
                 ("v1", "v2"): 2, ("w", "v0"): 3, ("u0", "v2"): 3, ("u1", "u2"): 3},
        "diff": {("w", "v0"): 1, ("u0", "v2"): 1, ("u0", "w"): 2, ("v0", "v1"): 2,
                 ("u1", "u2"): 2, ("u0", "u1"): 3, ("v1", "v2"): 3, ("u2", "v0"): 3},
    },
    "G8": {
        "diff": {("u0", "u1"): 1, ("v0", "v1"): 1, ("u1", "u2"): 2, ("u0", "v0"): 2,
                 ("u0", "v1"): 3, ("u2", "v0"): 3},
    },
}


def _palette_map(a: int, b: Optional[int]) -> Dict[int, int]:
    """Rename symbolic colors: symbol 1 becomes ``a``, symbol 2 becomes ``b`` if given."""
    if b is None:
        rest = [c for c in PALETTE if c != a]
        return {1: a, 2: rest[0], 3: rest[1]}
    rest = [c for c in PALETTE if c not in (a, b)]
    return {1: a, 2: b, 3: rest[0]}


def extend_coloring(step: ReductionStep, c_reduced: ColorAssignment) -> ColorAssignment:
    """Lift a proper 3-edge-coloring of the reduced graph to the original graph.

    Surviving edges keep their colors (edges at the identified vertex take the
    color of their image); configuration edges follow the fixed tables after
    renaming colors to match the boundary.
    """
    verdict = validate_coloring(step.reduced, c_reduced)
    if not verdict:
        raise ExtensionError(f"reduced coloring is improper: {verdict.reason} {verdict.detail}")
    if c_reduced.k > 3 and max(c_reduced.colors.values(), default=0) > 3:
        raise ExtensionError("reduced coloring uses more than 3 colors")
    g = step.original
    r = step.cfg.roles
    colors: Dict[Edge, int] = {}
    for e in g.edges:
        if e in step.removed_edges:
            continue
        colors[e] = c_reduced[(step.new_id[e[0]], step.new_id[e[1]])]

    def put(a: str, b: str, col: int):
        colors[edge_key(r[a], r[b])] = col

    kind = step.cfg.kind
    if kind == "G1":
        ux = colors[edge_key(r["u"], r["x"])]
        vy = colors[edge_key(r["v"], r["y"])]
        put("u", "v", min(c for c in PALETTE if c not in (ux, vy)))
    elif kind == "H":
        _extend_h(step, c_reduced, colors)
    else:
        b1, b2 = BOUNDARY[kind]
        if kind == "G3":
            ca = _third_edge_color(g, colors, r["x"], {r["u"], r["v"]})
            cb = _third_edge_color(g, colors, r["y"], {r["u"], r["v"]})
        else:
            ca = colors[edge_key(r[b1[0]], r[b1[1]])]
            cb = colors[edge_key(r[b2[0]], r[b2[1]])]
        if ca is not None and cb is not None and ca != cb:
            case, pmap = "diff", _palette_map(ca, cb)
        elif "same" in TABLES[kind]:
            # a missing boundary edge is a wildcard
            case, pmap = "same", _palette_map(ca if ca is not None else (cb or 1), None)
        else:
            raise ExtensionError(f"{kind}: boundary colors {ca}, {cb} fit no table case")
        for (a, b), sym in TABLES[kind][case].items():
            put(a, b, pmap[sym])
    out = ColorAssignment(3, colors)
    verdict = validate_coloring(g, out)
    if not verdict:
        raise ExtensionError(f"{step.cfg.label}: extension is improper: {verdict.reason} {verdict.detail}")
    return out


def _third_edge_color(g: Graph, colors: Dict[Edge, int], v: int, skip) -> Optional[int]:
    for w in g.adj[v]:
        if w not in skip:
            return colors[edge_key(v, w)]
    return None


def _extend_h(step: ReductionStep, c_reduced: ColorAssignment, colors: Dict[Edge, int]) -> None:
    r = step.cfg.roles
    t = step.cfg.t
    x, y = step.added_edge
    a = c_reduced[(step.new_id[x], step.new_id[y])]
    colors[edge_key(r[f"u{t}"], r["x"])] = a
    colors[edge_key(r[f"v{t}"], r["y"])] = a
    top = a
    for i in range(t, 1, -1):
        rung = min(c for c in PALETTE if c != top)
        down = next(c for c in PALETTE if c not in (top, rung))
        colors[edge_key(r[f"u{i}"], r[f"v{i}"])] = rung
        colors[edge_key(r[f"u{i}"], r[f"u{i - 1}"])] = down
        colors[edge_key(r[f"v{i}"], r[f"v{i - 1}"])] = down
        top = down
    b, c = [col for col in PALETTE if col != top]
    colors[edge_key(r["u0"], r["v0"])] = top
    colors[edge_key(r["u1"], r["u0"])] = b
    colors[edge_key(r["u1"], r["v0"])] = c
    colors[edge_key(r["v0"], r["v1"])] = b
    colors[edge_key(r["u0"], r["v1"])] = c
