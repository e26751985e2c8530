"""Runs the CLI and validates its JSON outputs against schemas/.

Usage: python3 tools/validate_schemas.py [path/to/sighom]
"""
import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

ROOT = pathlib.Path(__file__).resolve().parent.parent
BIN = sys.argv[1] if len(sys.argv) > 1 else str(ROOT / "target/debug/sighom")
SCHEMAS = {p.name: json.loads(p.read_text()) for p in (ROOT / "schemas").glob("*.json")}
REGISTRY = Registry().with_resources([(n, Resource.from_contents(s)) for n, s in SCHEMAS.items()])

CASES = [
    (["build", "tromp-9"], "graph", False),
    (["chi2", "G3"], "chromatic", False),
    (["chis", "G1"], "chromatic", False),
    (["chi2", "G3", "--node-limit", "3"], "chromatic", False),
    (["check-hom", "G1", "k4star", "--signed"], "hom", False),
    (["check-hom", "G4prime", "sp-9"], "hom", False),
    (["check-hom", "sp-9", "sp-5"], "hom", False),
    (["props", "--target", "at-sp-25", "--check", "P:3:4", "--check", "P:3:5"], "props", False),
    (["campaign", "--input", str(ROOT / "fixtures/octahedron.pc")], "campaign-report", True),
    (["witnesses"], "witnesses", False),
]

for args, schema, lines in CASES:
    out = subprocess.run([BIN, *args], capture_output=True, text=True).stdout
    docs = [json.loads(l) for l in out.splitlines()] if lines else [json.loads(out)]
    validator = jsonschema.Draft202012Validator(SCHEMAS[f"{schema}.schema.json"], registry=REGISTRY)
    for d in docs:
        validator.validate(d)
    print(f"ok  {' '.join(args)}  ->  {schema}")
