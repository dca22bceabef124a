#!/usr/bin/env python3
"""Validate mlfc JSON reports against schemas/report.schema.json.

With --mlfc, runs one small case per report kind (plus error reports) and
checks stdout and the exit code. With --report, validates the given files.
"""
import argparse
import json
import os
import subprocess
import sys

import jsonschema

CASES = [
    # (name, args, expected exit code, expected kind)
    ("mlf_eval", ["mlf", "eval", "--alpha", "0.7", "--beta", "1.3", "--z", "2,3", "--json"], 0, "mlf_eval"),
    ("mlf_eval_oracle", ["mlf", "eval", "--z", "-30", "--oracle-digits", "60", "--json"], 0, "mlf_eval"),
    ("oscint", ["oscint", "--alpha", "0.8", "--beta", "0.8", "--lambda", "100", "--phase", "quadratic:c=0",
                "--amp", "indicator:a=0,b=1"], 0, "oscint"),
    ("oscint_oracle", ["oscint", "--lambda", "20", "--oracle"], 0, "oscint"),
    ("oscint_line", ["oscint", "--lambda", "5", "--amp", "gaussian:sigma=1", "--domain", "line"], 0, "oscint"),
    ("decay_verify", ["decay", "verify", "--theorem", "T31i", "--alpha", "1.2", "--beta", "2.5",
                      "--grid", "10:1e3:8"], 0, "decay_verify"),
    ("decay_verdict", ["decay", "verify", "--theorem", "T31i", "--alpha", "1.2", "--beta", "2.5",
                       "--grid", "10:1e3:8", "--ratio-cap", "1e-6"], 4, "decay_verify"),
    ("rl", ["rl", "--alpha", "0.8", "--beta", "0.8", "--amp", "smooth_bump:a=0,b=1", "--grid", "10:1e3:8"], 0, "rl"),
    ("pde_kg", ["pde", "kg", "--xgrid", "-3:3:7"], 0, "pde_snapshot"),
    ("pde_schrodinger", ["pde", "schrodinger", "--xgrid", "-3:3:7", "--t", "2"], 0, "pde_snapshot"),
    ("pde_decay", ["pde", "decay", "--model", "schrodinger", "--tgrid", "1:10:3", "--xgrid", "-5:5:11"], 0,
     "pde_decay"),
    ("hypothesis", ["decay", "verify", "--theorem", "T21i", "--alpha", "1.5", "--beta", "2",
                    "--phase", "mass_shell:mu=1", "--amp", "gaussian:sigma=1", "--domain", "line"], 2, "error"),
    ("numerical", ["mlf", "eval", "--z", "800", "--json"], 3, "error"),
    ("usage", ["oscint", "--lambda", "0.5"], 1, "error"),
]


def check(validator, doc, label):
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    for e in errors:
        print(f"{label}: {'/'.join(map(str, e.path)) or '<root>'}: {e.message[:300]}")
    return not errors


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--schema", required=True)
    ap.add_argument("--mlfc")
    ap.add_argument("--workdir", default=".")
    ap.add_argument("--report", action="append", default=[])
    args = ap.parse_args()

    with open(args.schema) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    ok = True

    if args.mlfc:
        os.makedirs(args.workdir, exist_ok=True)
        env = dict(os.environ)
        env.pop("MLFC_CONFIG", None)
        for name, cli_args, want_code, want_kind in CASES:
            p = subprocess.run([args.mlfc, *cli_args], capture_output=True, text=True, env=env, cwd=args.workdir)
            label = f"{name} ({' '.join(cli_args)})"
            if p.returncode != want_code:
                print(f"{label}: exit code {p.returncode}, expected {want_code}\n{p.stderr}")
                ok = False
                continue
            try:
                doc = json.loads(p.stdout)
            except json.JSONDecodeError as e:
                print(f"{label}: stdout is not JSON: {e}")
                ok = False
                continue
            if doc.get("kind") != want_kind:
                print(f"{label}: kind {doc.get('kind')!r}, expected {want_kind!r}")
                ok = False
            ok &= check(validator, doc, label)
            with open(os.path.join(args.workdir, name + ".json"), "w") as f:
                f.write(p.stdout)
            print(f"{label}: ok")

    for path in args.report:
        with open(path) as f:
            doc = json.load(f)
        if check(validator, doc, path):
            print(f"{path}: ok")
        else:
            ok = False

    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
