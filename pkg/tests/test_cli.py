import json
import subprocess
import sys

import pytest

from arithstruct.cli import run
from arithstruct.graph import cycle_graph, path_graph, star_graph

from conftest import k3_wedge_k3


def write(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(json.dumps(payload))
    return str(p)


@pytest.fixture
def golden(tmp_path):
    g = write(tmp_path, "g.json", k3_wedge_k3().to_json())
    s = write(tmp_path, "s.json", {"d": [2, 3, 2, 3, 7], "r": [4, 3, 5, 2, 1]})
    return g, s


def lines(capsys):
    return [json.loads(x) for x in capsys.readouterr().out.splitlines()]


def test_verify_ok_and_invalid(tmp_path, golden, capsys):
    g, s = golden
    assert run(["verify", "--graph", g, "--structure", s]) == 0
    assert lines(capsys) == [{"valid": True, "failures": []}]
    bad = write(tmp_path, "bad.json", {"d": [2, 3, 2, 3, 6], "r": [4, 3, 5, 2, 1]})
    assert run(["verify", "--graph", g, "--structure", bad]) == 1
    assert lines(capsys)[0]["failures"] == ["kernel"]


def test_verify_relaxed_flag(tmp_path, capsys):
    g = write(tmp_path, "g.json", path_graph(2).to_json())
    s = write(tmp_path, "s.json", {"d": ["1/2", "2"], "r": [2, 1]})
    assert run(["verify", "--graph", g, "--structure", s]) == 1
    assert run(["verify", "--graph", g, "--structure", s, "--relaxed", "p1"]) == 0


def test_split_then_glue(tmp_path, golden, capsys):
    g, s = golden
    assert run(["split", "--graph", g, "--structure", s, "--at", "z"]) == 0
    pieces = lines(capsys)[0]
    assert [p["structure"]["d"] for p in pieces] == [["2", "3", "7/5"], ["3/5", "3", "7"]]
    paths = []
    for i, p in enumerate(pieces):
        paths.append(f"{write(tmp_path, f'g{i}.json', p['graph'])}:{write(tmp_path, f's{i}.json', p['structure'])}:z")
    assert run(["glue", "--left", paths[0], "--right", paths[1]]) == 0
    out = lines(capsys)[0]
    assert out["structure"] == {"d": ["2", "3", "2", "3", "7"], "r": [4, 3, 5, 2, 1], "relaxed": []}


def test_extend_path(tmp_path, capsys):
    g = write(tmp_path, "g.json", cycle_graph(4).to_json())
    s = write(tmp_path, "s.json", {"d": ["1/3", "6", "5/3", "9"], "r": [15, 3, 3, 2], "relaxed": ["c1", "c3"]})
    assert run(["extend", "--graph", g, "--structure", s, "--strategy", "path"]) == 0
    out = lines(capsys)[0]
    assert out["graph"]["vertices"] == ["c1", "c2", "c3", "c4", "c1.p1", "c1.p2", "c3.p1"]
    assert out["structure"]["d"] == ["1", "6", "2", "9", "2", "2", "3"]


def test_critgroup(tmp_path, capsys):
    g = write(tmp_path, "g.json", star_graph(3).to_json())
    s = write(tmp_path, "s.json", {"d": [1, 3, 3, 3], "r": [3, 1, 1, 1]})
    assert run(["critgroup", "--graph", g, "--structure", s]) == 0
    out = lines(capsys)[0]
    assert out["order"] == out["tree_formula_order"] == "3"
    assert out["invariant_factors"] == [3]


def test_det_check_and_blocks(golden, capsys):
    g, _ = golden
    assert run(["det-check", "--graph", g, "--at", "z", "--seed", "1", "--trials", "20"]) == 0
    assert lines(capsys)[0]["pass"] is True
    assert run(["blocks", "--graph", g]) == 0
    assert lines(capsys)[0]["cut_vertices"] == ["z"]
    assert run(["det-check", "--graph", g, "--at", "x1", "--seed", "1"]) == 1


def test_enumerate_summary_and_budget(tmp_path, capsys):
    g = write(tmp_path, "g.json", path_graph(5).to_json())
    assert run(["enumerate", "--graph", g]) == 0
    out = lines(capsys)
    assert len(out) == 15 and out[-1]["summary"]["count"] == 14
    assert run(["enumerate", "--graph", g, "--node-limit", "5"]) == 2
    assert lines(capsys)[-1]["summary"]["exhausted"] is True


def test_bad_inputs(tmp_path, capsys):
    assert run(["verify", "--graph", str(tmp_path / "missing.json"), "--structure", "x"]) == 1
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert run(["blocks", "--graph", str(junk)]) == 1
    assert run(["nonsense"]) == 1


def test_module_entry_point(tmp_path):
    g = write(tmp_path, "g.json", path_graph(3).to_json())
    proc = subprocess.run(
        [sys.executable, "-m", "arithstruct", "enumerate", "--graph", g],
        capture_output=True, text=True, check=True,
    )
    rows = [json.loads(x) for x in proc.stdout.splitlines()]
    assert rows[-1]["summary"]["count"] == 2
