"""Runs every subcommand with JSON output and validates it against the schema."""

import json
import subprocess
import sys

import jsonschema

RUNS = [
    ["eta", "--n", "1..4", "--t", "2,3"],
    ["design-check", "--n", "3", "--t", "2..4"],
    ["decay", "--n", "3", "--samples", "40", "--max-t", "1"],
    ["mixing", "--n", "3", "--t", "2"],
    ["gatecount", "--n", "16,32", "--t", "4"],
    ["circuit-sample", "--n", "3", "--t", "2", "--seed", "1"],
    ["circuit-sample", "--n", "3", "--t", "2", "--kind", "continuous"],
]


def main(binary, schema_path):
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in RUNS:
        for exact in ([], ["--exact"]):
            cmd = [binary, *args, "--format", "json", *exact]
            out = subprocess.run(cmd, check=True, capture_output=True, text=True).stdout
            errors = list(validator.iter_errors(json.loads(out)))
            for e in errors:
                print(" ".join(cmd), "->", e.message)
            failures += len(errors)
    print(f"{len(RUNS) * 2} outputs checked, {failures} schema errors")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], sys.argv[2]))
