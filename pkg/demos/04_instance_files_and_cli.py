"""Instance files and the command line front end, driven from Python.

Run:  python demos/04_instance_files_and_cli.py
"""

import tempfile
from pathlib import Path

from erasure_ifc import parse_instance, serialize_instance
from erasure_ifc import cli, instances

tmp = Path(tempfile.mkdtemp())
path = tmp / "mixture.json"

text = serialize_instance(instances.ifc_private_split())
path.write_text(text)
print("An instance file is plain JSON with exact rational probabilities:")
print(text)

assert parse_instance(text) == instances.ifc_private_split()
print("parse(serialize(d)) == d, so files are a faithful interchange format.")
print()

print("$ erasure-ifc analyze", path.name)
cli.main(["analyze", str(path)])
print()

out = tmp / "trials.csv"
print(f"$ erasure-ifc simulate {path.name} --scheme private-split "
      f"--private-levels 2 --inner strong-joint --T 500 --trials 5 --out {out.name}")
cli.main([
    "simulate", str(path), "--scheme", "private-split", "--private-levels", "2",
    "--inner", "strong-joint", "--T", "500", "--trials", "5", "--seed", "1",
    "--out", str(out),
])
print(out.read_text())

print(f"$ erasure-ifc sweep {path.name} --scheme mixed --vary epsilon --values 0.05,0.1,0.2")
cli.main([
    "sweep", str(path), "--scheme", "mixed", "--vary", "epsilon",
    "--values", "0.05,0.1,0.2", "--T", "500", "--trials", "5", "--seed", "1",
])
