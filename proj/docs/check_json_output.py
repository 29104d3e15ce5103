#!/usr/bin/env python3
"""Exercise every --json output of the gbsn CLI and validate it against the
schemas shipped in docs/schemas. Usage: check_json_output.py /path/to/gbsn"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

SCHEMA_DIR = Path(__file__).resolve().parent / "schemas"


def load_schemas():
    schemas = {}
    for path in sorted(SCHEMA_DIR.glob("*.schema.json")):
        schemas[path.name.removesuffix(".schema.json")] = json.loads(path.read_text())
    return schemas


def certificate_kind(kind):
    def check(doc):
        cert = doc["certificate"]
        assert cert is not None, "expected a certificate"
        assert cert["kind"] == kind, f"expected kind {kind}, got {cert['kind']}"

    return check


def no_certificate(doc):
    assert doc["certificate"] is None, "expected the search to come up empty"


def main():
    if len(sys.argv) != 2:
        print(f"usage: {sys.argv[0]} /path/to/gbsn", file=sys.stderr)
        return 2
    cli = sys.argv[1]
    schemas = load_schemas()

    with tempfile.TemporaryDirectory(prefix="gbsn_schema_check") as tmp:
        tmp = Path(tmp)

        def input_file(name, content):
            path = tmp / name
            path.write_text(content)
            return str(path)

        bs = input_file("bs.gbs", "hnn rank=1 phi=[[2]]\n")
        rot = input_file("rot.gbs", "hnn rank=2 phi=[[0,-1],[1,0]]\n")
        ident = input_file("ident.gbs", "hnn rank=2 phi=[[1,0],[0,1]]\n")
        triple = input_file("triple.gbs", "hnn rank=2 phi=[[3,0],[0,3]]\n")
        disconnected = input_file("disconnected.gbs", "gbs rank=1\nvertex a\nvertex b\n")
        lm_text = subprocess.run(
            [cli, "examples", "leary-minasyan"], capture_output=True, text=True, check=True
        ).stdout
        lm = input_file("lm.gbs", lm_text)
        sub_a = input_file("sub_a.txt", "a\n")
        sub_cube = input_file("sub_cube.txt", "a^3\nt\n")
        sub_full = input_file("sub_full.txt", "a\nt\n")
        sub_mixed = input_file("sub_mixed.txt", "a1^2\na2\nt\n")

        cases = [
            ("validation", ["validate", "--json", bs], 0, None),
            ("validation", ["validate", "--json", disconnected], 1, None),
            ("presentation", ["presentation", "--json", bs], 0, None),
            ("monodromy", ["monodromy", "--json", ident], 0, None),
            ("monodromy", ["monodromy", "--json", rot], 0, None),
            ("monodromy", ["monodromy", "--json", lm], 0, None),
            ("monodromy", ["monodromy", "--json", "--cap", "2", rot], 0, None),
            ("properties", ["properties", "--json", bs], 0, None),
            ("properties", ["properties", "--json", ident], 0, None),
            ("properties", ["properties", "--json", lm], 0, None),
            ("normal_form", ["normalize", "--json", bs, "t", "a", "t^-1"], 0, None),
            ("normal_form", ["normalize", "--json", bs, "t^-1", "a", "t"], 0, None),
            ("level_quotient", ["quotient", "--json", bs, "-p", "3", "-l", "2"], 0, None),
            ("level_quotient", ["quotient", "--json", bs, "-p", "3", "-l", "2", "a", "t"], 0, None),
            ("search_result", ["certificate", "--json", bs, sub_a], 0, certificate_kind("height")),
            ("search_result", ["certificate", "--json", bs, sub_cube], 0, certificate_kind("level")),
            ("search_result", ["certificate", "--json", bs, sub_full], 0, no_certificate),
            (
                "search_result",
                ["certificate", "--json", "--primes", "5", "--max-level", "1", triple, sub_mixed],
                0,
                certificate_kind("semidirect"),
            ),
        ]

        failures = 0
        for schema_name, args, expected_rc, extra in cases:
            label = " ".join(Path(a).name if a.startswith(str(tmp)) else a for a in args)
            result = subprocess.run([cli, *args], capture_output=True, text=True)
            if result.returncode != expected_rc:
                print(f"FAIL [{schema_name}] gbsn {label}: exit {result.returncode}, "
                      f"expected {expected_rc}\n{result.stderr}", file=sys.stderr)
                failures += 1
                continue
            try:
                doc = json.loads(result.stdout)
            except json.JSONDecodeError as err:
                print(f"FAIL [{schema_name}] gbsn {label}: output is not JSON: {err}",
                      file=sys.stderr)
                failures += 1
                continue
            try:
                jsonschema.validate(doc, schemas[schema_name])
                if schema_name == "search_result" and doc["certificate"] is not None:
                    jsonschema.validate(doc["certificate"], schemas["certificate"])
                if extra is not None:
                    extra(doc)
            except (jsonschema.ValidationError, AssertionError) as err:
                print(f"FAIL [{schema_name}] gbsn {label}: {err}", file=sys.stderr)
                failures += 1
                continue
            print(f"ok   [{schema_name}] gbsn {label}")

        if failures:
            print(f"{failures} of {len(cases)} outputs failed validation", file=sys.stderr)
            return 1
        print(f"all {len(cases)} outputs match their schemas")
        return 0


if __name__ == "__main__":
    sys.exit(main())
