"""Runs every subcommand with --json and validates the output against docs/schemas."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource


def main() -> int:
    binary, root = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {p.name: json.loads(p.read_text()) for p in (root / "docs" / "schemas").glob("*.schema.json")}
    registry = Registry().with_resources((name, Resource.from_contents(s)) for name, s in schemas.items())
    data = root / "data"
    svg = pathlib.Path(tempfile.mkdtemp()) / "plot.svg"

    runs = [
        ("betti", ["betti", str(data / "case11.json"), "--box", "4,4"]),
        ("betti", ["betti", str(data / "conic12.json"), "--box", "4,7", "--convention", "quotient"]),
        ("grid", ["h1", str(data / "conic12.json"), "--box", "5,8"]),
        ("grid", ["hf", str(data / "conic12.json"), "--box", "5,8"]),
        ("grid", ["nd", "--d", "1,6", "--box", "10,20"]),
        ("chi", ["chi", "--d", "2,3", "--box", "8,10"]),
        ("classify", ["classify", str(data / "threepoint3.json")]),
        ("classify", ["classify", str(data / "maps6.json")]),
        ("resolve", ["resolve", str(data / "conic12.json"), "--case", "conic"]),
        ("resolve", ["resolve", str(data / "threepoint3.json"), "--case", "threepoint"]),
        ("generic", ["generic", str(data / "maps6.json"), "--box", "10,24"]),
        ("generic", ["generic", str(data / "case11.json"), "--box", "4,4"]),
        ("experiment", ["lab", "--d", "1,2", "--trials", "3", "--seed", "5"]),
        ("experiment", ["lab", "--d", "1,1", "--trials", "2", "--field", "Q"]),
        ("probe", ["lab", "--d", "1,3", "--trials", "2", "--probe"]),
        ("plot", ["plot", str(data / "maps6.json"), "--box", "7,20", "-o", str(svg)]),
    ]
    failures = 0
    for schema, args in runs:
        proc = subprocess.run([binary, *args, "--json"], capture_output=True, text=True)
        label = " ".join(args)
        if proc.returncode != 0:
            print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        try:
            doc = json.loads(proc.stdout)
            validator = jsonschema.Draft202012Validator(schemas[schema + ".schema.json"], registry=registry)
            validator.validate(doc)
        except (json.JSONDecodeError, jsonschema.ValidationError) as e:
            print(f"FAIL {label}: {e}")
            failures += 1
            continue
        print(f"ok   {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
