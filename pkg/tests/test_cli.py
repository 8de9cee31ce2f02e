from __future__ import annotations

import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete, cycle, k4_minus_e
from outer1color.classp import base_graph
from outer1color.cli import (
    EXIT_CHECK, EXIT_NOT_O1P, EXIT_OK, EXIT_PARSE, EXIT_UNDECIDED, DocumentError, GraphDocument,
    emit_document, main, parse_coloring, parse_document,
)


def _doc(g, order=None) -> str:
    return emit_document(GraphDocument(g.n, [list(e) for e in g.edges], order))


def run(args, tmp_path=None, files=None):
    for name, text in (files or {}).items():
        (tmp_path / name).write_text(text)
    out = io.StringIO()
    code = main([str(tmp_path / a) if files and a in files else a for a in args], out=out)
    return code, out.getvalue()


def test_chi_reports(tmp_path):
    files = {"c5.json": _doc(cycle(5)), "k4.json": _doc(complete(4)), "b.json": _doc(base_graph())}
    assert run(["chi", "c5.json"], tmp_path, files) == (EXIT_OK, "chi=3 class=2 (odd cycle)\n")
    assert run(["chi", "k4.json"], tmp_path, files) == (EXIT_OK, "chi=3 class=1\n")
    assert run(["chi", "b.json"], tmp_path, files) == (EXIT_OK, "chi=4 class=2 (class P)\n")


def test_chi_json(tmp_path):
    code, out = run(["chi", "b.json", "--json", "--witness"], tmp_path, {"b.json": _doc(base_graph())})
    data = json.loads(out)
    assert code == EXIT_OK and data["chi"] == 4 and len(data["coloring"]) == 7


def test_color_output_verifies(tmp_path):
    for name, g, k in [("k4e.json", k4_minus_e(), 3), ("c4.json", cycle(4), 2), ("b.json", base_graph(), 4)]:
        code, out = run(["color", name], tmp_path, {name: _doc(g)})
        rows = json.loads(out)
        assert code == EXIT_OK and rows == sorted(rows)
        assert len({c for _, _, c in rows}) == k
        assert run(["verify", name, "col.json"], tmp_path, {name: _doc(g), "col.json": out})[0] == EXIT_OK


def test_color_dot(tmp_path):
    code, out = run(["color", "k4.json", "--dot"], tmp_path, {"k4.json": _doc(complete(4))})
    assert code == EXIT_OK and out.startswith("graph G {") and "--" in out


def test_embed(tmp_path):
    code, out = run(["embed", "k4.json"], tmp_path, {"k4.json": _doc(complete(4))})
    assert code == EXIT_OK and "crossings: 1" in out and "optimal: yes" in out
    code, out = run(["embed", "c6.json"], tmp_path, {"c6.json": _doc(cycle(6))})
    assert code == EXIT_OK and "crossings: 0" in out
    code, out = run(["embed", "k5.json"], tmp_path, {"k5.json": _doc(complete(5))})
    assert code == EXIT_NOT_O1P and "not outer-1-planar" in out


def test_embed_undecided(tmp_path):
    from outer1color.drawing import random_outer1
    import random

    g = random_outer1(20, random.Random(2), degree_cap=3).graph
    code, out = run(["embed", "g.json", "--budget", "10"], tmp_path, {"g.json": _doc(g)})
    assert code in (EXIT_OK, EXIT_UNDECIDED)
    if code == EXIT_OK:
        assert "optimal: no" in out


def test_chi_not_outer1_planar(tmp_path):
    code, out = run(["chi", "k5.json"], tmp_path, {"k5.json": _doc(complete(5))})
    assert code == EXIT_NOT_O1P and "not outer-1-planar" in out


def test_classp(tmp_path):
    code, out = run(["classp", "b.json"], tmp_path, {"b.json": _doc(base_graph())})
    assert code == EXIT_OK and out.startswith("in P")
    code, out = run(["classp", "k4.json"], tmp_path, {"k4.json": _doc(complete(4))})
    assert code == EXIT_OK and out.startswith("not in P")


def test_gen_is_reproducible(tmp_path, capsys):
    a = run(["gen", "--n", "9", "--seed", "7"])[1]
    b = run(["gen", "--n", "9", "--seed", "7"])[1]
    assert a == b
    doc = parse_document(a)
    assert doc.metadata["seed"] == 7 and doc.order is not None
    p = parse_document(run(["gen", "--class-p", "--ops", "3", "--seed", "7"])[1])
    assert p.metadata["generator"] == "class-p" and p.metadata["outer_1_planar"] is True
    assert p.order is not None
    assert "seed=7" in capsys.readouterr().err


def test_gen_class_p_reports_non_embeddable():
    doc = parse_document(run(["gen", "--class-p", "--ops", "3", "--seed", "106", "--n", "14"])[1])
    assert doc.metadata["outer_1_planar"] is False and doc.order is None


def test_verify(tmp_path):
    files = {"t.json": _doc(cycle(3)), "ok.json": "[[0,1,1],[1,2,2],[0,2,3]]",
             "bad.json": "[[0,1,1],[1,2,2],[0,2,2]]", "lines.txt": "0 1 1\n1 2 2\n0 2 3\n"}
    assert run(["verify", "t.json", "ok.json"], tmp_path, files)[0] == EXIT_OK
    assert run(["verify", "t.json", "lines.txt"], tmp_path, files)[0] == EXIT_OK
    code, out = run(["verify", "t.json", "bad.json"], tmp_path, files)
    assert code == EXIT_CHECK and "improper" in out


def test_parse_errors(tmp_path):
    files = {"bad.json": "{not json", "loop.txt": "2 1\n0 0\n", "short.txt": "3 2\n0 1\n",
             "order.json": json.dumps({"n": 4, "edges": [[0, 1]], "order": [0, 1, 2]})}
    for name in files:
        assert run(["chi", name], tmp_path, files)[0] == EXIT_PARSE
    assert run(["chi", str(tmp_path / "missing.json")])[0] == EXIT_PARSE


def test_invalid_drawing_order_is_rejected():
    text = json.dumps({"n": 6, "edges": [[i, (i + 1) % 6] for i in range(6)] + [[0, 3], [1, 4], [2, 5]],
                       "order": [0, 1, 2, 3, 4, 5]})
    with pytest.raises(DocumentError):
        parse_document(text)


def test_edge_list_format():
    doc = parse_document("# K4 minus an edge\n4 5\n0 1\n1 2\n2 3\n3 0\n0 2\n")
    assert doc.n == 4 and len(doc.edges) == 5 and doc.order is None


def test_coloring_formats():
    assert parse_coloring("[[1,0,2]]") == {(0, 1): 2}
    assert parse_coloring("0 1 2\n") == {(0, 1): 2}
    with pytest.raises(DocumentError):
        parse_coloring("0 1\n")


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 12), st.integers(0, 10**6), st.booleans())
def test_json_round_trip(n, seed, with_meta):
    import random
    from outer1color.drawing import random_outer1

    d = random_outer1(n, random.Random(seed), degree_cap=3)
    doc = GraphDocument(d.graph.n, list(d.graph.edges), list(d.order),
                        {"seed": seed} if with_meta else {})
    assert parse_document(emit_document(doc)) == doc


def test_sweep_command():
    out = io.StringIO()
    code = main(["sweep", "--max-n", "7", "--only", "1,3,4"], out=out)
    text = out.getvalue()
    assert code == EXIT_OK and "0 mismatches" in text and "[PASS] 1." in text
