#!/usr/bin/env python3
"""Smoke test for the rootstring_py extension module.

Builds are produced by cargo as lib<name>.so; importing needs the bare
module name, so the script stages a copy next to itself first:

    cargo build -p rootstring-py
    python3 python/smoke_test.py
"""

import pathlib
import shutil
import sys


def stage_module() -> pathlib.Path:
    here = pathlib.Path(__file__).resolve().parent
    repo = here.parent
    candidates = [
        repo / "target" / "debug" / "librootstring_py.so",
        repo / "target" / "release" / "librootstring_py.so",
        repo / "target" / "debug" / "librootstring_py.dylib",
        repo / "target" / "release" / "librootstring_py.dylib",
    ]
    built = next((c for c in candidates if c.exists()), None)
    if built is None:
        sys.exit("no built extension found; run `cargo build -p rootstring-py` first")
    staged = here / "rootstring_py.so"
    if not staged.exists() or built.stat().st_mtime > staged.stat().st_mtime:
        shutil.copy2(built, staged)
    return here


sys.path.insert(0, str(stage_module()))

import rootstring_py  # noqa: E402


def check(cond, msg):
    if not cond:
        sys.exit(f"FAIL: {msg}")


# Construction and positive-root counts.
a2 = rootstring_py.RootSystem("A2")
check(a2.rank == 2, "A2 rank")
check(a2.positive_count == 3, "A2 positive count")

e8 = rootstring_py.RootSystem("E8")
check(e8.positive_count == 120, "E8 positive count")
check(max(sum(r) for r in e8.positive_roots()) == 29, "E8 highest level")

bc3 = rootstring_py.RootSystem("BC3")
check(bc3.positive_count == 12, "BC3 positive count")

d3 = rootstring_py.RootSystem("D3")
check(d3.is_alias and d3.canonical_designator == "A3", "D3 aliases A3")

# Cartan integers and alpha-strings.
check(a2.cartan_integer([1, 0], [0, 1]) == -1, "A2 Cartan integer")
bc1 = rootstring_py.RootSystem("BC1")
check(bc1.cartan_integer([1], [2]) == 4, "BC1 doubled Cartan integer")
g2 = rootstring_py.RootSystem("G2")
check(len(g2.alpha_string([1, 0], [0, 1])) == 4, "G2 four-element string")

# Phi-strings, minimum, classification.
s = a2.phi_string([1], [0, 1])
check(s.cardinality == 2, "A2 string cardinality")
check(s.minimum() == [0, 1], "A2 string minimum")
check(not s.subsystem_case, "A2 string flag")

f4 = rootstring_py.RootSystem("F4")
s = f4.phi_string([1, 2, 3], [0, 0, 0, 1])
check(s.cardinality == 14, "C3>F4 string cardinality")
phi_t, ext_t, family = f4.classify_pair([1, 2, 3], [0, 0, 0, 1])
check((phi_t, ext_t) == ("C3", "F4"), f"pair classified as ({phi_t}, {ext_t})")
check("C3>F4" in family, f"family {family}")

# Subsystem case is flagged and has no distinguished base.
s = a2.phi_string([1, 2], [1, 1])
check(s.subsystem_case and s.minimum() is None, "subsystem case")

# Product strings for non-connected phi.
d4 = rootstring_py.RootSystem("D4")
p = d4.product_string([[1], [3], [4]], [0, 1, 0, 0])
b = d4.phi_string([1, 3, 4], [0, 1, 0, 0])
check(p.members() == b.members(), "product formula agrees with the scan")
check(p.cardinality == 8, "D4 three-block product size")

# Diagrams.
dot = f4.diagram_dot([2, 3, 4], [1, 0, 0, 0])
check(dot.count("->") == 8, "B3>F4 diagram edge count")
ok, failures = f4.diagram_invariants([2, 3, 4], [1, 0, 0, 0])
check(ok, f"diagram invariants: {failures}")

# Per-case and catalog verification.
ok, detail = f4.verify([1, 2, 3], [0, 0, 0, 1])
check(ok, f"verify case: {detail}")
outcomes = rootstring_py.catalog(max_n=3, max_n_bc=2)
check(all(passed for (_, passed, _) in outcomes), "catalog verification")
check(any(name.startswith("E7>E8 fixture") for (name, _, _) in outcomes), "catalog coverage")

print(f"OK: all smoke checks passed ({len(outcomes)} catalog cases)")
