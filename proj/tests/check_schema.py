"""Validate every JSON-emitting qdist command against docs/output-schema.json."""

import json
import subprocess
import sys

import jsonschema

RUNS = [
    ["det", "--path", "4"],
    ["det", "--star", "5", "--weights", "1 2 3 4"],
    ["det", "--tree", "{data}/single.txt"],
    ["verify", "--exhaustive", "4"],
    ["verify", "--random", "20", "--n-max", "6", "--max-weight", "3", "--seed", "3"],
    ["perm-table", "--path", "4"],
    ["perm-table", "--prufer", "2 2", "--weights", "1 2 3"],
    ["wiener", "--random", "7", "--seed", "1", "--max-weight", "5"],
    ["gen-tree", "--prufer", "1 1"],
    ["enumerate", "--exhaustive", "4"],
]


def main() -> int:
    qdist, schema_path, data = sys.argv[1:4]
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in RUNS:
        args = [a.format(data=data) for a in args]
        proc = subprocess.run([qdist, *args, "--output", "json"], capture_output=True, text=True)
        errors = [] if proc.returncode == 0 else [f"exit {proc.returncode}: {proc.stderr.strip()}"]
        if not errors:
            errors = [e.message for e in validator.iter_errors(json.loads(proc.stdout))]
        status = "ok" if not errors else "FAIL"
        print(f"{status:4} {' '.join(args)}")
        for e in errors[:3]:
            print(f"     {e}")
        failures += bool(errors)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
