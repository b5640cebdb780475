"""Runs each JSON-emitting subcommand and validates the output against schemas/."""

import json
import pathlib
import subprocess
import sys

import jsonschema

cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
schemas = {p.name.split(".")[0]: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
schemas["star"]["properties"]["tree"] = schemas["tree"]

cases = [
    ("info", ["info", "--type", "E8"], 0),
    ("info", ["info", "--type", "2F4"], 0),
    ("validate", ["validate", "--type", "2G2", "--qsq", "27", "--ell", "19"], 0),
    ("validate", ["validate", "--type", "A2", "--qsq", "2", "--ell", "3"], 2),
    ("tree", ["tree", "--fixture", "2g2", "--qsq", "27", "--ell", "19"], 0),
    ("tree", ["tree", "--fixture", "line4", "--mu", "2"], 0),
    ("decmatrix", ["decmatrix", "--fixture", "2g2"], 0),
    ("algebra", ["algebra", "--fixture", "star7x3n2"], 0),
    ("rickard", ["rickard", "--fixture", "line3", "--mu", "2", "--vertex", "2", "--check-tilting"], 0),
    ("rickard", ["rickard", "--fixture", "2g2", "--vertex", "1"], 0),
    ("star", ["star", "--d", "7", "--e", "3", "--n", "2", "--verify"], 0),
    ("star", ["star", "--d", "49", "--e", "3", "--n", "18"], 0),
]

failures = 0
for schema, args, expected_exit in cases:
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    label = " ".join(args)
    if proc.returncode != expected_exit:
        print(f"FAIL {label}: exit {proc.returncode}, expected {expected_exit}: {proc.stderr.strip()}")
        failures += 1
        continue
    try:
        jsonschema.validate(json.loads(proc.stdout), schemas[schema])
        print(f"ok   {label}")
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        print(f"FAIL {label}: {e}")
        failures += 1

sys.exit(1 if failures else 0)
