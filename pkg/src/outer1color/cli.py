"""Command-line interface: ``outer1color <command> ...``.

Exit codes: 0 success, 1 unreadable or invalid input, 2 not outer-1-planar,
3 embeddability undecided within the search budget, 4 a check failed
(``verify`` on an improper coloring, ``sweep`` with a failing criterion).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple

from .chroma import NotOuter1PlanarError, UndecidedEmbeddingError, chromatic_index
from .classp import generate_p, recognize_p
from .drawing import DEFAULT_BUDGET, Drawing, find_embedding, is_valid_outer1, random_outer1
from .graph import ColorAssignment, Graph, GraphError, blocks, build_graph, edge_key, subgraph, validate_coloring

EXIT_OK, EXIT_PARSE, EXIT_NOT_O1P, EXIT_UNDECIDED, EXIT_CHECK = 0, 1, 2, 3, 4


class DocumentError(ValueError):
    pass


@dataclass
class GraphDocument:
    n: int
    edges: List[Tuple[int, int]]
    order: Optional[List[int]] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    def graph(self) -> Graph:
        return build_graph(self.n, self.edges)

    def drawing(self) -> Optional[Drawing]:
        return None if self.order is None else Drawing(self.graph(), tuple(self.order))


def parse_document(text: str) -> GraphDocument:
    """Read a JSON graph document or a plain edge list (``n m`` then ``u v`` lines)."""
    stripped = text.strip()
    if not stripped:
        raise DocumentError("empty input")
    if stripped.startswith("{"):
        try:
            raw = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON: {exc}") from None
        try:
            n = int(raw["n"])
            edges = [(int(u), int(v)) for u, v in raw["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"graph document needs 'n' and 'edges' as pairs: {exc}") from None
        order = raw.get("order")
        doc = GraphDocument(n, edges, None if order is None else [int(v) for v in order], dict(raw.get("metadata") or {}))
    else:
        rows = [line.split("#", 1)[0].split() for line in stripped.splitlines()]
        rows = [r for r in rows if r]
        try:
            n, m = int(rows[0][0]), int(rows[0][1])
            edges = [(int(r[0]), int(r[1])) for r in rows[1:]]
        except (IndexError, ValueError):
            raise DocumentError("edge list needs an 'n m' header followed by 'u v' lines") from None
        if len(edges) != m:
            raise DocumentError(f"header announces {m} edges, found {len(edges)}")
        doc = GraphDocument(n, edges)
    _check(doc)
    return doc


def _check(doc: GraphDocument) -> None:
    try:
        g = doc.graph()
    except GraphError as exc:
        raise DocumentError(str(exc)) from None
    if doc.order is not None:
        if sorted(doc.order) != list(range(doc.n)):
            raise DocumentError("order must be a permutation of 0..n-1")
        verdict = is_valid_outer1(Drawing(g, tuple(doc.order)))
        if not verdict:
            raise DocumentError(f"order is not an outer-1-plane drawing: {verdict.reason} {verdict.detail}")


def emit_document(doc: GraphDocument) -> str:
    out: Dict[str, Any] = {"n": doc.n, "edges": [list(e) for e in doc.edges]}
    if doc.order is not None:
        out["order"] = list(doc.order)
    if doc.metadata:
        out["metadata"] = doc.metadata
    return json.dumps(out)


def parse_coloring(text: str) -> Dict[Tuple[int, int], int]:
    stripped = text.strip()
    try:
        if stripped.startswith("["):
            rows = json.loads(stripped)
        else:
            rows = [line.split() for line in stripped.splitlines() if line.split("#", 1)[0].strip()]
        return {edge_key(int(u), int(v)): int(c) for u, v, c in rows}
    except (ValueError, TypeError, json.JSONDecodeError):
        raise DocumentError("coloring must be JSON [[u, v, color], ...] or 'u v color' lines") from None


def to_dot(g: Graph, c: ColorAssignment, name: str = "G") -> str:
    palette = ["red", "blue", "green3", "orange", "purple", "brown", "cyan4", "magenta"]
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(g.n)]
    for (u, v), col in sorted(c.colors.items()):
        lines.append(f'  {u} -- {v} [label="{col}", color="{palette[(col - 1) % len(palette)]}"];')
    lines.append("}")
    return "\n".join(lines)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str) -> GraphDocument:
    try:
        return parse_document(_read(path))
    except OSError as exc:
        raise DocumentError(str(exc)) from None


def _result(doc: GraphDocument, budget: int):
    return chromatic_index(doc.graph(), order=doc.order, embed_budget=budget)


def cmd_chi(args, out: TextIO) -> int:
    doc = _load(args.file)
    r = _result(doc, args.budget)
    if args.json:
        out.write(json.dumps({
            "chi": r.chi, "class": r.classification, "delta": r.delta, "reason": r.reason,
            "witness_optimal": r.witness_optimal, "fallback_used": r.fallback_used,
            "coloring": [list(row) for row in r.coloring.as_rows()] if args.witness else None,
            "trace": r.trace, "events": r.events,
        }) + "\n")
        return EXIT_OK
    note = f" ({r.reason})" if r.classification == 2 and r.reason else ""
    out.write(f"chi={r.chi} class={r.classification}{note}\n")
    if not r.witness_optimal:
        out.write(f"witness uses {r.coloring.used()} colors (not optimal)\n")
    for event in r.events:
        out.write(f"event: {event}\n")
    if args.witness:
        for u, v, col in r.coloring.as_rows():
            out.write(f"{u} {v} {col}\n")
    return EXIT_OK


def cmd_color(args, out: TextIO) -> int:
    doc = _load(args.file)
    r = _result(doc, args.budget)
    if args.dot:
        out.write(to_dot(doc.graph(), r.coloring) + "\n")
    else:
        out.write(json.dumps([list(row) for row in r.coloring.as_rows()]) + "\n")
    return EXIT_OK


def cmd_embed(args, out: TextIO) -> int:
    doc = _load(args.file)
    g = doc.graph()
    if blocks(g).blocks and len(blocks(g).blocks) > 1:
        # glueing block drawings is not attempted; report per block
        status = EXIT_OK
        for i, es in enumerate(blocks(g).blocks):
            sub, originals = subgraph(g, es)
            r = find_embedding(sub, args.budget)
            status = max(status, _report_embedding(out, r, originals, f"block {i}: "))
        return status
    r = find_embedding(g, args.budget)
    return _report_embedding(out, r, list(range(g.n)), "")


def _report_embedding(out: TextIO, r, originals: Sequence[int], prefix: str) -> int:
    if r.drawing is None:
        if r.optimal:
            out.write(f"{prefix}not outer-1-planar (exhaustive search, {r.explored} nodes)\n")
            return EXIT_NOT_O1P
        out.write(f"{prefix}undecided: search budget exhausted after {r.explored} nodes\n")
        return EXIT_UNDECIDED
    order = " ".join(str(originals[v]) for v in r.drawing.order)
    out.write(f"{prefix}order: {order}\n{prefix}crossings: {r.crossings}\n"
              f"{prefix}optimal: {'yes' if r.optimal else 'no (budget exhausted)'}\n")
    return EXIT_OK


def cmd_classp(args, out: TextIO) -> int:
    doc = _load(args.file)
    cert = recognize_p(doc.graph())
    if cert is None:
        out.write("not in P\n")
        return EXIT_OK
    out.write(f"in P: base graph (subdivided K4) then {len(cert.ops)} paste(s)\n")
    for i, op in enumerate(cert.ops, 1):
        where = f"at vertex {op.at}" if op.at is not None else f"on edge {op.ends[0]}-{op.ends[1]}"
        out.write(f"  {i}. {op.label} {where}\n")
    return EXIT_OK


def cmd_gen(args, out: TextIO) -> int:
    sys.stderr.write(f"seed={args.seed}\n")
    if args.class_p:
        g, cert = generate_p(args.seed, args.ops, max_n=args.n)
        # not every member of P is outer-1-planar; record which this one is
        e = find_embedding(g, budget=args.budget, minimal=False)
        meta = {"generator": "class-p", "seed": args.seed, "ops": [op.label for op in cert.ops],
                "outer_1_planar": e.embeddable}
        order = list(e.drawing.order) if e.drawing is not None else None
        doc = GraphDocument(g.n, list(g.edges), order, meta)
    else:
        if args.n is None:
            raise DocumentError("gen needs --n (or --class-p)")
        d = random_outer1(args.n, random.Random(args.seed), degree_cap=args.max_degree, density=args.density)
        meta = {"generator": "random-outer-1-planar", "seed": args.seed, "max_degree": args.max_degree,
                "density": args.density}
        doc = GraphDocument(d.graph.n, list(d.graph.edges), list(d.order), meta)
    text = emit_document(doc) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    doc = _load(args.graph)
    try:
        colors = parse_coloring(_read(args.coloring))
    except OSError as exc:
        raise DocumentError(str(exc)) from None
    k = max(colors.values(), default=1)
    verdict = validate_coloring(doc.graph(), ColorAssignment(k, colors))
    if verdict:
        out.write(f"ok: proper coloring with {len(set(colors.values()))} colors\n")
        return EXIT_OK
    out.write(f"improper: {verdict.reason} {verdict.detail}\n")
    return EXIT_CHECK


def cmd_sweep(args, out: TextIO) -> int:
    from .sweep import run_all

    only = [int(x) for x in args.only.split(",")] if args.only else None
    out.write(f"seed={args.seed}\n")
    results = run_all(max_n=args.max_n, structure_max_n=args.structure_max_n or args.max_n + 1,
                      seed=args.seed, only=only, progress=lambda r: out.write(r.line() + "\n") or out.flush())
    out.write("\n criterion                      | result | seconds\n")
    out.write("-" * 52 + "\n")
    for r in results:
        out.write(f" {r.number}. {r.name:<27} | {'pass' if r.passed else 'FAIL':<6} | {r.seconds:7.1f}\n")
    failed = sum(not r.passed for r in results)
    out.write(f"\n{failed} failing criteria, {'0 mismatches' if not failed else 'see above'}\n")
    return EXIT_OK if not failed else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="outer1color", description="Edge chromatic number of outer-1-planar graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name: str, helptext: str):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("file", help="graph document (JSON or edge list); '-' for stdin")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="embedding search node budget")
        return sp

    sp = graph_cmd("chi", "chromatic index and class")
    sp.add_argument("--witness", action="store_true", help="print the coloring")
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    sp.set_defaults(func=cmd_chi)
    sp = graph_cmd("color", "witness coloring as JSON rows [u, v, color]")
    sp.add_argument("--dot", action="store_true", help="emit a DOT graph instead")
    sp.set_defaults(func=cmd_color)
    graph_cmd("embed", "minimum-crossing outer-1-plane drawing").set_defaults(func=cmd_embed)
    sp = sub.add_parser("classp", help="membership certificate for the class P")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_classp)

    sp = sub.add_parser("gen", help="random outer-1-planar graph or class-P member")
    sp.add_argument("--n", type=int, help="number of vertices (upper bound with --class-p)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-degree", type=int, default=3)
    sp.add_argument("--density", type=float, default=0.7, help="chance of keeping each admissible chord")
    sp.add_argument("--class-p", action="store_true", help="grow a member of P by random pastes")
    sp.add_argument("--ops", type=int, default=3, help="number of pastes for --class-p")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                    help="node limit of the embeddability check for --class-p")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("verify", help="check a coloring is proper")
    sp.add_argument("graph")
    sp.add_argument("coloring")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="run the acceptance criteria")
    sp.add_argument("--max-n", type=int, default=8)
    sp.add_argument("--structure-max-n", type=int, default=None, help="defaults to max-n + 1")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--only", help="comma-separated criterion numbers")
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except DocumentError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except NotOuter1PlanarError as exc:
        out.write(f"not outer-1-planar: {exc}\n")
        return EXIT_NOT_O1P
    except UndecidedEmbeddingError as exc:
        out.write(f"undecided embeddability: {exc}\n")
        return EXIT_UNDECIDED


if __name__ == "__main__":
    sys.exit(main())
