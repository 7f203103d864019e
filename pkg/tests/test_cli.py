from __future__ import annotations

import json
import subprocess
import sys

import pytest
from hypothesis import given
from strategies import graphs

from isomat.cli import GraphParseError, emit_graph, graph_document, main, parse_graph
from isomat.graphs import LoopedSimpleGraph, cycle_graph, path_graph

P3_DOC = '{"n":3,"edges":[[0,1],[1,2]],"loops":[]}'


def write(tmp_path, name, g_or_text):
    p = tmp_path / name
    p.write_text(g_or_text if isinstance(g_or_text, str) else emit_graph(g_or_text))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_examples():
    assert parse_graph(P3_DOC) == path_graph(3)
    assert parse_graph('{"n":1,"edges":[],"loops":[0]}') == LoopedSimpleGraph.from_edges(1, loops=[0])
    assert parse_graph('{"n":2}') == LoopedSimpleGraph.empty(2)
    assert parse_graph("Bg", "graph6") == path_graph(3)
    assert parse_graph("Bg;L=010", "g6loops") == path_graph(3, loops=[1])


@pytest.mark.parametrize(
    "text",
    [
        '{"n":3,"edges":[[0,1]],"loops":[5]}',
        '{"n":3,"edges":[[0,3]]}',
        '{"n":3,"edges":[[0,1],[1,0]]}',
        '{"n":3,"edges":[[1,1]]}',
        '{"n":3,"loops":[1,1]}',
        '{"n":-1}',
        "[1, 2]",
        '{"n":3,"edges":[[0]]}',
    ],
)
def test_parse_errors(text):
    with pytest.raises(GraphParseError):
        parse_graph(text)


def test_parse_error_location():
    with pytest.raises(GraphParseError, match=r"line 2, column"):
        parse_graph('{"n": 3,\n "edges": [[0,1],]}')


def test_parse_bad_graph6():
    with pytest.raises(GraphParseError):
        parse_graph("~~~~", "graph6")
    with pytest.raises(GraphParseError):
        parse_graph("Bg;L=01", "g6loops")
    with pytest.raises(GraphParseError):
        parse_graph("Bg", "g6loops")
    with pytest.raises(ValueError):
        parse_graph("Bg", "dot")


@given(graphs(max_n=7))
def test_roundtrip_all_formats(g):
    assert parse_graph(emit_graph(g, "json"), "json") == g
    assert parse_graph(emit_graph(g, "g6loops"), "g6loops") == g
    assert json.loads(emit_graph(g)) == graph_document(g)
    if g.is_simple():
        assert parse_graph(emit_graph(g, "graph6"), "graph6") == g
    else:
        with pytest.raises(ValueError):
            emit_graph(g, "graph6")


def test_interlace_k1(tmp_path, capsys):
    path = write(tmp_path, "k1.json", '{"n":1,"edges":[],"loops":[]}')
    code, out, _ = run(capsys, "interlace", path)
    assert code == 0
    assert json.loads(out)["q"] == "y"
    assert json.loads(out)["vertex_nullity"] == "y"


def test_equiv_pivots_p4_c4(tmp_path, capsys):
    a = write(tmp_path, "p4.json", path_graph(4))
    b = write(tmp_path, "c4.json", cycle_graph(4))
    code, out, _ = run(capsys, "equiv", "--moves=pivots", a, b)
    assert code == 0 and json.loads(out) == {"equivalent": True, "moves": "pivots-only"}


def test_verify_triangle(capsys):
    code, out, _ = run(capsys, "verify", "--suite=triangle", "--max-n=4")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] is True and doc["cases"] > 0


def test_other_commands(tmp_path, capsys):
    p3 = write(tmp_path, "p3.json", P3_DOC)
    code, out, _ = run(capsys, "delta", p3)
    assert code == 0 and json.loads(out)["feasible"] == [[], [0, 1], [1, 2]]
    code, out, _ = run(capsys, "cycles", p3)
    doc = json.loads(out)
    assert doc["count"] == 8 and doc["zeta"]["1"] == ["0_phi", "1_chi", "2_phi"]
    code, out, _ = run(capsys, "info", p3)
    doc = json.loads(out)
    assert doc["rank"] == 3 and len(doc["components"]) == 1 and doc["loops"] == []
    k1 = write(tmp_path, "k1.json", '{"n":1}')
    code, out, _ = run(capsys, "section", k1)
    assert json.loads(out)["section"] == "u + 2"
    code, out, _ = run(capsys, "section", "--preset=interlace", k1)
    assert json.loads(out)["section"] == "x*u - u + 1"
    code, out, _ = run(capsys, "orbit", "--moves=loops", k1)
    assert json.loads(out)["size"] == 2
    code, out, _ = run(capsys, "triangulations", write(tmp_path, "k2.json", path_graph(2)))
    assert code == 0 and json.loads(out)["count"] >= 1


def test_formats_on_cli(tmp_path, capsys):
    g6 = write(tmp_path, "p3.g6", "Bg\n")
    code, out, _ = run(capsys, "delta", "--format=graph6", g6)
    assert code == 0 and json.loads(out)["feasible"] == [[], [0, 1], [1, 2]]
    gl = write(tmp_path, "p3.g6l", "Bg;L=010\n")
    code, out, _ = run(capsys, "info", "--format=g6loops", gl)
    assert json.loads(out)["graph"]["loops"] == [1]


def test_domain_errors_exit_1(tmp_path, capsys):
    bad = write(tmp_path, "bad.json", '{"n":3,"edges":[[0,1]],"loops":[5]}')
    code, out, err = run(capsys, "info", bad)
    assert code == 1 and out == "" and "loop vertex" in json.loads(err)["error"]
    code, _, err = run(capsys, "info", str(tmp_path / "missing.json"))
    assert code == 1 and "missing.json" in json.loads(err)["error"]
    big = write(tmp_path, "p4.json", path_graph(4))
    code, _, err = run(capsys, "delta", "--limit-n=3", big)
    assert code == 1 and "limited" in json.loads(err)["error"]


def test_usage_errors_exit_2(capsys):
    for argv in ([], ["orbit", "x.json"], ["verify", "--suite=nope"], ["frobnicate"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    capsys.readouterr()


def test_output_deterministic_and_pretty(tmp_path, capsys):
    p3 = write(tmp_path, "p3.json", P3_DOC)
    _, first, _ = run(capsys, "cycles", p3)
    _, second, _ = run(capsys, "cycles", p3)
    assert first == second and "\n" not in first.strip()
    _, pretty, _ = run(capsys, "cycles", "--pretty", p3)
    assert json.loads(pretty) == json.loads(first) and pretty.count("\n") > 3


def test_module_entry_point(tmp_path):
    p3 = write(tmp_path, "p3.json", P3_DOC)
    proc = subprocess.run([sys.executable, "-m", "isomat", "delta", p3], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["feasible"] == [[], [0, 1], [1, 2]]
    proc = subprocess.run([sys.executable, "-m", "isomat", "delta", "-"], input=P3_DOC, capture_output=True, text=True, check=False)
    assert proc.returncode == 0
