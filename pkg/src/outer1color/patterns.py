"""Reducible configurations of 2-connected outer-1-plane graphs with Δ ≤ 3.

Each configuration is a template: named roles, the edges among them, the
pairs of template edges that must cross in the drawing, and which roles are
anchors (``x``, ``y``: vertices outside the configuration whose degree is
only bounded below). Every non-anchor role has exactly the degree the
template gives it, so no edge leaves the configuration except through the
anchors.

Orientation on the circle is not part of a template; a mirrored occurrence
simply matches with the roles read the other way round.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from .drawing import Drawing, interleave
from .graph import Graph, Verdict, edge_key, is_biconnected, max_degree

RoleEdge = Tuple[str, str]


@dataclass(frozen=True)
class Template:
    kind: str
    roles: Tuple[str, ...]  # search order; each role after the first touches an earlier one
    edges: Tuple[RoleEdge, ...]
    crossed: Tuple[Tuple[RoleEdge, RoleEdge], ...] = ()
    anchors: Tuple[str, ...] = ("x", "y")
    allow_equal_anchors: bool = True
    # reduction data
    removed: Tuple[str, ...] = ()
    contract: Optional[Tuple[str, str]] = None
    delete_edge: Optional[RoleEdge] = None
    bridge: bool = False  # H(t): delete everything internal, join x and y
    degree: Dict[str, int] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        deg: Dict[str, int] = {r: 0 for r in self.roles}
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        object.__setattr__(self, "degree", deg)

    @property
    def internal(self) -> Tuple[str, ...]:
        return tuple(r for r in self.roles if r not in self.anchors)

    @property
    def needs_distinct_anchors(self) -> bool:
        """Kinds whose reduction identifies or joins the anchors."""
        return self.contract is not None or self.bridge


def _path(*names: str) -> Tuple[RoleEdge, ...]:
    return tuple((names[i], names[i + 1]) for i in range(len(names) - 1))


TEMPLATES: Dict[str, Template] = {
    "G1": Template(
        "G1", ("u", "v", "x", "y"),
        edges=(("u", "v"), ("u", "x"), ("v", "y")),
        delete_edge=("u", "v"),
    ),
    "G2": Template(
        "G2", ("u", "v", "w", "x", "y"),
        edges=(("u", "v"), ("u", "w"), ("v", "w"), ("v", "x"), ("w", "y")),
        removed=("u",), contract=("v", "w"),
    ),
    "G3": Template(
        "G3", ("u", "x", "v", "y"),
        edges=(("u", "x"), ("x", "v"), ("v", "y"), ("y", "u")),
        allow_equal_anchors=False,
        removed=("u", "v"),
    ),
    "G4": Template(
        "G4", ("u1", "u0", "w", "v0", "v1", "x", "y"),
        edges=_path("x", "u1", "u0", "w", "v0", "v1", "y") + (("u0", "v1"), ("u1", "v0")),
        crossed=((("u0", "v1"), ("u1", "v0")),),
        removed=("u0", "v0", "w"), contract=("u1", "v1"),
    ),
    "G5": Template(
        "G5", ("u2", "u1", "u0", "v0", "v1", "v2", "x", "y"),
        edges=_path("x", "u2", "u1", "u0", "v0", "v1", "v2", "y") + (("u2", "v0"), ("u0", "v2")),
        crossed=((("u2", "v0"), ("u0", "v2")),),
        removed=("u0", "u1", "v0", "v1"),
    ),
    "G6": Template(
        "G6", ("u2", "u1", "u0", "w", "v0", "v1", "x", "y"),
        edges=_path("x", "u2", "u1", "u0", "w", "v0", "v1", "y") + (("u2", "v0"), ("u0", "v1")),
        crossed=((("u2", "v0"), ("u0", "v1")),),
        removed=("u0", "u1", "v0", "w"),
    ),
    "G7": Template(
        "G7", ("u2", "u1", "u0", "w", "v0", "v1", "v2", "x", "y"),
        edges=_path("x", "u2", "u1", "u0", "w", "v0", "v1", "v2", "y") + (("u2", "v0"), ("u0", "v2")),
        crossed=((("u2", "v0"), ("u0", "v2")),),
        removed=("u0", "u1", "v0", "v1", "w"),
    ),
    "G8": Template(
        "G8", ("u2", "u1", "u0", "v0", "v1", "x", "y"),
        edges=_path("x", "u2", "u1", "u0", "v0", "v1", "y") + (("u2", "v0"), ("u0", "v1")),
        crossed=((("u2", "v0"), ("u0", "v1")),),
        removed=("u0", "u1", "v0"), contract=("u2", "v1"),
    ),
}

KINDS = ("G1", "G2", "G3", "G4", "G5", "G6", "G7", "G8", "H")


def h_template(t: int) -> Template:
    """Chain of ``t`` rungs closed by a crossed K4-e at its core."""
    if t < 1:
        raise ValueError(f"H(t) needs t >= 1, got {t}")
    us = [f"u{i}" for i in range(t + 1)]
    vs = [f"v{i}" for i in range(t + 1)]
    edges: List[RoleEdge] = [("u0", "v0"), ("u1", "v0"), ("u0", "v1")]
    for i in range(t):
        edges.append((us[i], us[i + 1]))
        edges.append((vs[i], vs[i + 1]))
    for i in range(2, t + 1):
        edges.append((us[i], vs[i]))
    edges += [(us[t], "x"), (vs[t], "y")]
    roles = tuple(reversed(us)) + tuple(vs) + ("x", "y")
    return Template(
        f"H{t}", roles, tuple(edges),
        crossed=((("u1", "v0"), ("u0", "v1")),),
        removed=tuple(us + vs), bridge=True,
    )


def template(kind: str, t: Optional[int] = None) -> Template:
    if kind == "H":
        return h_template(t if t is not None else 1)
    if kind.startswith("H") and kind[1:].isdigit():
        return h_template(int(kind[1:]))
    try:
        return TEMPLATES[kind]
    except KeyError:
        raise ValueError(f"unknown configuration kind {kind!r}") from None


@dataclass(frozen=True)
class Configuration:
    kind: str  # "G1".."G8" or "H"
    roles: Dict[str, int]
    t: Optional[int] = None

    @property
    def template(self) -> Template:
        return template(self.kind, self.t)

    @property
    def label(self) -> str:
        return f"H{self.t}" if self.kind == "H" else self.kind

    @property
    def anchors_equal(self) -> bool:
        return self.roles["x"] == self.roles["y"]

    def key(self) -> Tuple[int, ...]:
        return tuple(self.roles[r] for r in self.template.roles)


class StructureTheoremViolation(RuntimeError):
    """No configuration found where one is guaranteed; carries the drawing."""

    def __init__(self, drawing: Drawing, message: str = "structure theorem violated"):
        super().__init__(f"{message}: n={drawing.graph.n} edges={list(drawing.graph.edges)} order={list(drawing.order)}")
        self.drawing = drawing


def iter_matches(g: Graph, tpl: Template, drawing: Optional[Drawing] = None) -> Iterator[Dict[str, int]]:
    """Role assignments matching ``tpl`` in lexicographic order of ``tpl.roles``.

    With ``drawing=None`` crossing requirements are ignored (pure graph match).
    """
    roles = tpl.roles
    adj_roles: Dict[str, List[str]] = {r: [] for r in roles}
    for a, b in tpl.edges:
        adj_roles[a].append(b)
        adj_roles[b].append(a)
    anchors = set(tpl.anchors)
    pos = drawing.pos if drawing is not None else None
    assign: Dict[str, int] = {}
    used: Dict[int, str] = {}

    def candidates(i: int):
        r = roles[i]
        earlier = [a for a in adj_roles[r] if a in assign]
        if earlier:
            base = set(g.adj[assign[earlier[0]]])
            for a in earlier[1:]:
                base &= set(g.adj[assign[a]])
            return sorted(base)
        return range(g.n)

    def fits(r: str, v: int) -> bool:
        if r in anchors:
            if v in used:
                other = used[v]
                if not (tpl.allow_equal_anchors and other in anchors and other != r):
                    return False
        else:
            if v in used or g.degree(v) != tpl.degree[r]:
                return False
        for a in adj_roles[r]:
            if a in assign and not g.has_edge(v, assign[a]):
                return False
        return True

    def rec(i: int):
        if i == len(roles):
            if pos is not None:
                for (a, b), (c, d) in tpl.crossed:
                    e = edge_key(assign[a], assign[b])
                    f = edge_key(assign[c], assign[d])
                    if not interleave(pos, e, f):
                        return
            yield dict(assign)
            return
        r = roles[i]
        for v in candidates(i):
            if not fits(r, v):
                continue
            assign[r] = v
            fresh = v not in used
            if fresh:
                used[v] = r
            yield from rec(i + 1)
            if fresh:
                del used[v]
            del assign[r]

    yield from rec(0)


def match_template(d: Optional[Drawing], kind: str, roles: Dict[str, int],
                   t: Optional[int] = None, graph: Optional[Graph] = None) -> Verdict:
    """Check a single role assignment against a template."""
    tpl = template(kind, t)
    g = d.graph if d is not None else graph
    if g is None:
        raise ValueError("match_template needs a drawing or a graph")
    if set(roles) != set(tpl.roles):
        return Verdict(False, f"roles {sorted(roles)} do not fit {tpl.kind}")
    for r, v in roles.items():
        if not 0 <= v < g.n:
            return Verdict(False, f"role {r} -> {v} is not a vertex")
    internal = [roles[r] for r in tpl.internal]
    if len(set(internal)) != len(internal) or set(internal) & {roles[a] for a in tpl.anchors}:
        return Verdict(False, "roles are not distinct")
    if roles["x"] == roles["y"] and not tpl.allow_equal_anchors:
        return Verdict(False, "anchors must differ")
    for a, b in tpl.edges:
        if not g.has_edge(roles[a], roles[b]):
            return Verdict(False, f"missing edge {a}{b}", (roles[a], roles[b]))
    for r in tpl.internal:
        if g.degree(roles[r]) != tpl.degree[r]:
            return Verdict(False, f"deg({r}) = {g.degree(roles[r])}, expected {tpl.degree[r]}")
    if d is not None:
        pos = d.pos
        for (a, b), (c, e) in tpl.crossed:
            if not interleave(pos, edge_key(roles[a], roles[b]), edge_key(roles[c], roles[e])):
                return Verdict(False, f"{a}{b} does not cross {c}{e}")
    return Verdict(True)


def all_matches(d: Drawing, kinds=KINDS) -> Iterator[Configuration]:
    """Every configuration occurrence in ``d`` (crossings enforced), unfiltered."""
    g = d.graph
    for kind in kinds:
        if kind == "H":
            for t in range(1, g.n // 2 + 1):
                for roles in iter_matches(g, h_template(t), d):
                    yield Configuration("H", roles, t)
        else:
            for roles in iter_matches(g, TEMPLATES[kind], d):
                yield Configuration(kind, roles)


def find_configuration(d: Drawing) -> Configuration:
    """First reducible configuration in the fixed search order.

    Kinds are tried G1..G8 then H(1), H(2), ...; within a kind the
    lexicographically smallest role assignment wins. An occurrence whose
    reduction identifies or joins distinct anchors is accepted only if the
    reduced graph inherits a valid drawing from ``d`` (and, for H(t), the
    anchors are not already adjacent). Occurrences with equal anchors are
    returned as they are: they pin down the whole graph.
    """
    from .reduction import inherited_drawing

    g = d.graph
    if g.n < 4:
        raise ValueError(f"need at least 4 vertices, got {g.n}")
    if max_degree(g) > 3:
        raise ValueError("configurations are only defined for maximum degree <= 3")
    if not is_biconnected(g):
        raise ValueError("graph is not 2-connected")
    for cfg in all_matches(d):
        tpl = cfg.template
        if tpl.needs_distinct_anchors and not cfg.anchors_equal:
            if tpl.bridge and g.has_edge(cfg.roles["x"], cfg.roles["y"]):
                continue
            if inherited_drawing(d, cfg) is None:
                continue
        return cfg
    if not any(interleave(d.pos, e, f) for e in g.edges for f in g.edges):
        raise StructureTheoremViolation(d, "no configuration in a crossing-free drawing")
    raise StructureTheoremViolation(d)
