# The command-line interface, driven from Python.
# Every subcommand prints JSON; enumerate prints JSON lines and a summary.
# Run: python3 demos/04_command_line.py

# %%
import json
import subprocess
import sys
import tempfile
from pathlib import Path

from arithstruct import cycle_graph, path_graph

tmp = Path(tempfile.mkdtemp())


def cli(*args):
    proc = subprocess.run([sys.executable, "-m", "arithstruct", *args], capture_output=True, text=True)
    print("$ arithstruct", " ".join(args), f"(exit {proc.returncode})")
    print(proc.stdout.strip() or proc.stderr.strip())
    print()
    return proc


# %%
(tmp / "p4.json").write_text(json.dumps(path_graph(4).to_json()))
cli("enumerate", "--graph", str(tmp / "p4.json"))
cli("enumerate", "--graph", str(tmp / "p4.json"), "--node-limit", "3")

# %%
(tmp / "c4.json").write_text(json.dumps(cycle_graph(4).to_json()))
(tmp / "c4s.json").write_text(json.dumps({"d": ["1/3", "6", "5/3", "9"], "r": [15, 3, 3, 2], "relaxed": ["c1", "c3"]}))
cli("verify", "--graph", str(tmp / "c4.json"), "--structure", str(tmp / "c4s.json"))
cli("extend", "--graph", str(tmp / "c4.json"), "--structure", str(tmp / "c4s.json"), "--strategy", "path")

# %%
tri = {"vertices": ["x1", "x2", "z", "y1", "y2"],
       "edges": [["x1", "x2"], ["x1", "z"], ["x2", "z"], ["z", "y1"], ["z", "y2"], ["y1", "y2"]]}
(tmp / "kk.json").write_text(json.dumps(tri))
(tmp / "kks.json").write_text(json.dumps({"d": [2, 3, 2, 3, 7], "r": [4, 3, 5, 2, 1]}))
cli("blocks", "--graph", str(tmp / "kk.json"))
cli("split", "--graph", str(tmp / "kk.json"), "--structure", str(tmp / "kks.json"), "--at", "z")
cli("critgroup", "--graph", str(tmp / "kk.json"), "--structure", str(tmp / "kks.json"))
cli("det-check", "--graph", str(tmp / "kk.json"), "--at", "z", "--seed", "0", "--trials", "50")
