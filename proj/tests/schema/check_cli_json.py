#!/usr/bin/env python3
"""Runs `deemed ... --json` and validates each output against its schema."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema


def main() -> int:
    deemed, schema_dir, data_dir = sys.argv[1:4]
    ex = os.path.join(data_dir, "examples")
    repo = os.path.join(data_dir, "scenarios", "repository.jsonl")
    life = os.path.join(data_dir, "scenarios", "lifecycle.jsonl")

    with tempfile.NamedTemporaryFile("w", suffix=".jsonl", delete=False) as bad:
        bad.write('{"universe":["p"],"agents":["a"],"horizon":4}\n')
        bad.write('{"t":3,"kind":"grant","group":["a"],"objective":"p"}\n')
        bad.write('{"t":3,"kind":"revoke","group":["a"],"objective":"p"}\n')
    export = tempfile.mktemp(suffix=".json")

    cases = [
        ("parse", ["parse", "-f", "Dabl{a} (p & q)"], 0),
        ("parse", ["parse", "--temporal", "-f", "Dabl{a} p W Disc{a} p"], 0),
        ("error", ["parse", "-f", "p &"], 2),
        ("eval", ["eval", "-m", os.path.join(ex, "illustration.json"), "-w", "w0", "-f", "Dabl{g} phi"], 0),
        ("error", ["eval", "-m", os.path.join(ex, "bad_conf.json"), "-w", "w0", "-f", "p"], 1),
        ("check-model", ["check-model", "-m", os.path.join(ex, "bad_conf.json")], 1),
        ("check-model", ["check-model", "-m", os.path.join(ex, "agency.json")], 0),
        ("validate-da", ["validate-da", "-t", os.path.join(ex, "bad_trace.json")], 1),
        ("validate-da", ["validate-da", "-t", os.path.join(ex, "good_trace.json")], 0),
        ("simulate", ["simulate", "-l", repo, "--export-trace", export], 0),
        ("simulate", ["simulate", "-l", life], 0),
        ("error", ["simulate", "-l", bad.name], 1),
        ("query", ["query", "-l", repo, "-f", "Dabl{s2} phi", "-t", "3"], 0),
        ("error", ["query", "-l", repo, "-f", "Dabl{s2} phi", "-t", "9"], 2),
        ("explain", ["explain", "-l", repo, "--fact", "Dabl{s2} phi", "-t", "3"], 0),
        ("explain", ["explain", "-l", repo, "--fact", "Disc{s2} phi", "-t", "5"], 0),
        ("error", ["explain", "-l", repo, "--fact", "Disc{s2} phi", "-t", "4"], 1),
        ("replay", ["replay", "repository"], 0),
        ("replay", ["replay", "lifecycle"], 0),
        ("soundness", ["soundness", "--suite", "static", "--cases", "10"], 0),
        ("soundness", ["soundness", "-m", os.path.join(ex, "bad_conf.json"), "--allow-invalid"], 1),
    ]

    failures = 0
    schemas = {}
    for name, args, code in cases:
        if name not in schemas:
            with open(os.path.join(schema_dir, name + ".schema.json")) as f:
                schemas[name] = json.load(f)
        proc = subprocess.run([deemed, *args, "--json"], capture_output=True, text=True)
        label = " ".join(args)
        try:
            if proc.returncode != code:
                raise ValueError(f"exit {proc.returncode}, expected {code}")
            jsonschema.validate(json.loads(proc.stdout), schemas[name])
        except (ValueError, jsonschema.ValidationError) as e:
            failures += 1
            print(f"FAIL {label}: {str(e).splitlines()[0]}")
            continue
        print(f"ok   {label}")

    # The exported trace must be loadable and satisfy C1-C3.
    proc = subprocess.run([deemed, "validate-da", "-t", export], capture_output=True, text=True)
    if proc.returncode != 0 or proc.stdout != "ok\n":
        failures += 1
        print(f"FAIL exported trace: {proc.stdout.strip()} {proc.stderr.strip()}")
    else:
        print("ok   exported trace validates")

    os.unlink(bad.name)
    if os.path.exists(export):
        os.unlink(export)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
