import json
from pathlib import Path

import pytest

from brauertilt.cli import main, parse_tree_spec
from brauertilt.errors import ParseError
from brauertilt.tree import load_tree, star_tree

DOCS = Path(__file__).resolve().parent.parent / "docs" / "trees"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fvector_single(capsys):
    code, out, _ = run(capsys, "fvector", "--tree", "line:2")
    assert code == 0 and out.strip() == "f = 1,6,6  h = 1,4,1"


def test_fvector_from_file(capsys):
    code, out, _ = run(capsys, "fvector", "--tree", str(DOCS / "y4.json"))
    assert code == 0 and out.strip() == "f = 1,20,90,140,70  h = 1,16,36,16,1"


def test_fvector_all_trees_and_csv(capsys):
    code, out, _ = run(capsys, "fvector", "--all-trees", "4")
    assert code == 0 and out.strip().endswith("identical f-vectors")
    code, out, _ = run(capsys, "fvector", "--all-trees", "3", "--csv")
    rows = out.strip().splitlines()
    assert rows[0] == "tree,f-1,f0,f1,f2,h0,h1,h2,h3" and len(rows) == 3


def test_fvector_facets_file(tmp_path, capsys):
    path = tmp_path / "facets.json"
    run(capsys, "fvector", "--tree", "line:2", "--facets", str(path))
    data = json.loads(path.read_text())
    assert len(data[0]["facets"]) == 6


def test_walks(capsys):
    code, out, _ = run(capsys, "walks", "--tree", "line:2")
    assert code == 0 and len(json.loads(out)) == 6
    code, out, _ = run(capsys, "walks", "--tree", "star:3", "--format", "csv")
    assert len(out.strip().splitlines()) == 1 + 12


def test_polytope_and_ehrhart(tmp_path, capsys):
    code, out, _ = run(capsys, "polytope", "--tree", "line:2", "--format", "off")
    assert out.splitlines()[:2] == ["OFF", "6 6 6"]
    target = tmp_path / "p.json"
    code, out, _ = run(capsys, "polytope", "--tree", "line:3", "--out", str(target))
    assert "12 vertices, 20 unimodular facets, centrally symmetric: True" in out
    assert len(json.loads(target.read_text())["vertices"]) == 12
    code, out, _ = run(capsys, "ehrhart", "--tree", "line:2", "--kmax", "3")
    assert out.splitlines() == ["L = 1,7,19,37", "h* = 1,4,1"]


def test_mutate(tmp_path, capsys):
    target = tmp_path / "moved.json"
    code, _, err = run(capsys, "mutate", "--tree", "star:3", "--edge", "1", "--out", str(target))
    assert code == 0 and err.startswith("mu_L summands:")
    moved = load_tree(target)
    assert moved.n == 3 and moved != star_tree(3)


def test_poset_exports(capsys):
    code, out, _ = run(capsys, "poset", "--tree", "line:2")
    assert out.startswith("digraph") and out.count("->") == 6
    code, out, _ = run(capsys, "poset", "--tree", "line:2", "--format", "json")
    assert len(json.loads(out)["nodes"]) == 6


def test_bicambrian(tmp_path, capsys):
    dot = tmp_path / "q.dot"
    code, out, _ = run(capsys, "bicambrian", "--rank", "3", "--dot", str(dot))
    assert out.strip() == "|W| = 24  Cambrian classes = 14,14  biCambrian classes = 20"
    assert dot.read_text().count("[label=") == 20


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "1,3", "--max-n", "3")
    assert code == 0 and out.strip().endswith("2/2 passed")


def test_threads_do_not_change_output(capsys, monkeypatch):
    _, one, _ = run(capsys, "--threads", "1", "fvector", "--all-trees", "5", "--csv")
    _, two, _ = run(capsys, "--threads", "2", "fvector", "--all-trees", "5", "--csv")
    assert one == two
    monkeypatch.setenv("BRAUERTILT_THREADS", "2")
    _, env, _ = run(capsys, "walks", "--tree", "line:3")
    monkeypatch.delenv("BRAUERTILT_THREADS")
    _, plain, _ = run(capsys, "walks", "--tree", "line:3")
    assert env == plain


def test_errors(capsys, tmp_path):
    code, _, err = run(capsys, "--json-errors", "fvector", "--tree", "star:x")
    assert code == 2 and json.loads(err)["error"] == "ParseError"
    code, _, err = run(capsys, "mutate", "--tree", "line:2", "--edge", "9")
    assert code == 2 and err.startswith("error:")
    code, _, err = run(capsys, "--json-errors", "walks", "--tree", str(tmp_path / "missing.json"))
    assert code == 2 and "error" in json.loads(err)
    code, _, err = run(capsys, "--json-errors", "bicambrian", "--rank", "7")
    assert code == 2 and json.loads(err)["error"] == "RankTooLarge"
    with pytest.raises(ParseError):
        parse_tree_spec("line:two")


def test_fixture_trees_load():
    for name in ("path2.json", "star3.json", "y4.json"):
        assert load_tree(DOCS / name).n == int(name[-6])
