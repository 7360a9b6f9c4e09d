#!/usr/bin/env python3
"""Exact output and exit-code checks for the quotientope CLI."""

import json
import subprocess
import sys
import tempfile
import os

BIN = sys.argv[1]
failures = 0


def run(*args, stdin=None):
    return subprocess.run([BIN, *args], capture_output=True, text=True,
                          input=stdin)


def check(name, cond, context=""):
    global failures
    if cond:
        print(f"ok: {name}")
    else:
        failures += 1
        print(f"FAIL: {name}\n{context}")


# hampath on the pentagon congruence: 5 lines, verified path, exit 0.
r = run("hampath", "--n", "3", "--fences", "1-3:{2}")
lines = r.stdout.strip().splitlines()
check("hampath pentagon", r.returncode == 0 and len(lines) == 5, r.stderr)
check("hampath starts at the identity", lines and lines[0] == "1 2 3")

# hampath for n=2 with no fences.
r = run("hampath", "--n", "2", "--fences", "")
check("hampath S_2", r.returncode == 0 and r.stdout == "1 2\n2 1\n", repr(r.stdout))

# hampath from a pattern set: Catalan many lines.
r = run("hampath", "--n", "4", "--patterns", "2[31]")
check("hampath tamari", r.returncode == 0 and len(r.stdout.strip().splitlines()) == 14)

# class annotations.
r = run("hampath", "--n", "2", "--fences", "", "--classes")
check("hampath annotations", "# class=" in r.stdout)

# counts.
r = run("count", "--n", "4", "--what", "congruences")
check("count congruences", r.returncode == 0 and r.stdout.strip() == "47")
r = run("count", "--n", "7", "--what", "regular")
check("count regular", r.stdout.strip() == "17424")
r = run("count", "--n", "2", "--what", "vt-noniso")
check("count vt-noniso", r.stdout.strip() == "1")
r = run("count", "--n", "4", "--what", "noniso")
check("count noniso", r.stdout.strip() == "19\t10")
r = run("count", "--n", "4", "--what", "regular", "--verify", "--jobs", "2")
check("count verify", r.returncode == 0 and r.stdout.strip() == "25")

# analyze: JSON with the expected fields.
r = run("analyze", "--n", "4", "--fences", "")
report = json.loads(r.stdout)
check("analyze permutahedron",
      report["classes"] == 24 and report["regular"] is True
      and report["vertex_transitive"] is True and report["min_degree"] == 3)
r = run("analyze", "--n", "4", "--patterns", "2[31]")
report = json.loads(r.stdout)
check("analyze tamari",
      report["classes"] == 14 and report["regular"] is True
      and report["vertex_transitive"] is False
      and report["hamilton_cycle_found"] is True)
r = run("analyze", "--n", "4", "--fences", "1-4:{2}")
report = json.loads(r.stdout)
check("analyze non-simple arc", report["max_degree"] == 4)

# export DOT and JSON.
r = run("export", "--n", "3", "--fences", "1-3:{2}", "--format", "dot")
check("export dot", r.returncode == 0 and r.stdout.count("--") == 5
      and r.stdout.startswith("graph quotient {"))
r = run("export", "--n", "2", "--fences", "", "--format", "json")
graph = json.loads(r.stdout)
check("export json", len(graph["nodes"]) == 2 and len(graph["edges"]) == 1)
with tempfile.TemporaryDirectory() as tmp:
    out = os.path.join(tmp, "cube.dot")
    r = run("export", "--n", "4", "--fences",
            "1-3;1-3:{2};2-4;2-4:{3}", "--format", "dot", "--out", out)
    body = open(out).read()
    check("export hypercube to file",
          r.returncode == 0 and body.count("--") == 12)

# diagram file input.
with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "d.json")
    with open(path, "w") as f:
        json.dump({"n": 3, "fences": [{"a": 1, "b": 3, "left": [2]}],
                   "generators": True}, f)
    r = run("hampath", "--n", "3", "--diagram", path)
    check("hampath from file", r.returncode == 0
          and len(r.stdout.strip().splitlines()) == 5)

# table1.
r = run("table1", "--max-n", "7")
check("table1 rows", "|Q_n|\t1*\t4*\t47*\t3322*\t?\t?" in r.stdout
      and "max degree\t1\t2\t4\t5\t7\t8" in r.stdout)

# patterns listing and synthesis.
r = run("patterns", "--n", "4", "--patterns", "231")
check("patterns avoiders", len(r.stdout.strip().splitlines()) == 14)
r = run("patterns", "--n", "3", "--patterns", "2[31]", "--emit-congruence")
check("patterns congruence", r.stdout.strip() == "1-3:{2}")

# determinism: identical invocations give byte-identical output.
a = run("hampath", "--n", "4", "--patterns", "2[31]")
b = run("hampath", "--n", "4", "--patterns", "2[31]")
check("determinism", a.stdout == b.stdout)

# error handling and exit codes.
r = run("hampath", "--n", "3", "--fences", "9-1")
check("invalid fence exits 2", r.returncode == 2, f"rc={r.returncode}")
r = run("hampath", "--n", "3")
check("missing source exits 2", r.returncode == 2)
r = run("hampath", "--n", "3", "--fences", "1-3", "--patterns", "2[31]")
check("two sources rejected", r.returncode == 2)
r = run("count", "--n", "12", "--what", "congruences")
check("budget exceeded exits 4", r.returncode == 4, f"rc={r.returncode}")
r = run("patterns", "--n", "3", "--patterns", "123", "--emit-congruence")
check("non-well-behaved exits 2", r.returncode == 2)
r = run("count", "--n", "7", "--what", "regular", "--verify")
check("verify beyond budget exits 4", r.returncode == 4)

print("CLI: all checks passed" if failures == 0 else f"CLI: {failures} failures")
sys.exit(0 if failures == 0 else 1)
