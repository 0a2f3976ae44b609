import json
import subprocess
import sys

import pytest

from named_graphs import complete, cube, double_pentagon

from cyclex.cli import main
from cyclex.corpus import read_corpus
from cyclex.graph import Graph
from cyclex.io import graph_to_json, parse_graph_text, to_edgelist, to_graph6


@pytest.fixture
def files(tmp_path):
    out = {}
    out["cube"] = tmp_path / "cube.el"
    out["cube"].write_text(to_edgelist(cube()))
    out["k4"] = tmp_path / "k4.g6"
    out["k4"].write_text(to_graph6(complete(4)) + "\n")
    out["k6"] = tmp_path / "k6.json"
    out["k6"].write_text(json.dumps(graph_to_json(complete(6))))
    out["dp"] = tmp_path / "dp.el"
    out["dp"].write_text(to_edgelist(double_pentagon()))
    out["bad"] = tmp_path / "bad.el"
    out["bad"].write_text("3 2\n0 1\n")
    out["loop"] = tmp_path / "loop.json"
    out["loop"].write_text('{"vertices": [0, 1], "edges": [[0, 1, 1]]}')
    return out


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_check_exit_codes(files, capsys):
    assert run(capsys, "check", files["k4"])[:2] == (0, "CE\n")
    assert run(capsys, "check", files["cube"])[:2] == (1, "NotCE\n")
    assert run(capsys, "check", files["k6"])[0] == 2
    assert run(capsys, "check", files["bad"])[0] == 4
    assert run(capsys, "check", files["loop"])[0] == 4
    assert run(capsys, "check", files["cube"].with_name("nope.el"))[0] == 4


def test_check_json_and_dot(files, tmp_path, capsys):
    dot = tmp_path / "w.dot"
    code, out, err = run(capsys, "check", files["dp"], "--json", "--mode", "both", "--dot", dot)
    assert code == 1
    obj = json.loads(out)
    assert obj["verdict"] == "NotCE" and obj["mode"] == "both"
    assert "witness cycle" in err
    assert "color=red" in dot.read_text()


def test_check_oracle_off_the_plane(files, capsys):
    code, out, _ = run(capsys, "check", files["k6"], "--mode", "oracle", "--allow-nonplanar")
    assert (code, out) == (0, "CE\n")


def test_decompose(files, capsys):
    code, out, err = run(capsys, "decompose", files["k4"])
    assert code == 0 and json.loads(out)["b"] == 1
    assert "b = 1" in err
    code, out, _ = run(capsys, "decompose", files["bad"].with_name("path.el"))
    assert code == 4


def test_generate_and_recognize(tmp_path, capsys):
    target = tmp_path / "g.el"
    code, out, _ = run(capsys, "generate", "--family", "g2", "--parts", "2,2", "--out", target)
    assert code == 0
    obj = json.loads(out)
    assert obj["certificate"]["family"] == "g2"
    assert (tmp_path / "g.el.cert.json").exists()
    assert parse_graph_text(target.read_text()).n == obj["graph"]["vertices"][-1] + 1
    code, out, _ = run(capsys, "recognize", target)
    assert code == 0 and json.loads(out)["family"] == "g2"
    code, out, _ = run(capsys, "check", target)
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["--family", "g1", "--spec", '{"parts": [1, 0, 0]}'],
    ["--family", "g0", "--spec", "not json"],
    ["--family", "g0", "--spec", "[1, 2]"],
    ["--family", "g1", "--parts", "a,b"],
    ["--family", "wheel", "--k", "4"],
])
def test_generate_bad_spec(argv, capsys):
    assert run(capsys, "generate", *argv)[0] == 4


def test_generate_classical(tmp_path, capsys):
    code, out, _ = run(capsys, "generate", "--family", "prism", "--k", "5", "--out", tmp_path / "p.g6")
    assert code == 0 and json.loads(out)["graph6"] == (tmp_path / "p.g6").read_text().strip()
    code, out, _ = run(capsys, "generate", "--family", "halfbiwheel", "--path-length", "4")
    assert code == 0 and len(json.loads(out)["graph"]["vertices"]) == 6


def test_recognize_rejects_reducible_input(files, capsys):
    assert run(capsys, "recognize", files["cube"])[0] == 1  # irreducible, bipartite, no family
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])
    p = files["cube"].with_name("c6.el")
    p.write_text(to_edgelist(g))
    code, out, _ = run(capsys, "recognize", p)
    assert code == 2 and json.loads(out)["family"] is None


def test_reduce_trace(tmp_path, capsys):
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])
    p = tmp_path / "c6.el"
    p.write_text(to_edgelist(g))
    code, out, _ = run(capsys, "reduce", p, "--trace")
    obj = json.loads(out)
    assert code == 0 and obj["trace"]["k2_degenerate"]
    assert [s["kind"] for s in obj["trace"]["steps"]] == ["series", "series", "parallel"]
    code, out, _ = run(capsys, "reduce", p)
    assert "trace" not in json.loads(out)


def test_corpus(tmp_path, capsys):
    code, out, _ = run(capsys, "corpus", "--n-max", 6, "--out", tmp_path / "c", "--mcg-only")
    obj = json.loads(out)
    assert code == 0 and obj["records"] == obj["matching_covered"] == 1 + 2 + 24
    man = read_corpus(tmp_path / "c")
    assert sum(r.graph().n == 6 for r in man.records) == 24


def test_console_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "cyclex.cli", "check", str(files["cube"])],
                         capture_output=True, text=True)
    assert res.returncode == 1 and res.stdout == "NotCE\n"
