#!/usr/bin/env python3
"""Checks the problem schema against the fixture corpus.

Every fixture in the top directory must validate. Fixtures under invalid/
that are malformed at the schema level must be rejected; the remaining
invalid ones carry semantic errors (singular bases, square radicands, ...)
that only the parser can see, so they are allowed either way.
"""

import json
import pathlib
import sys

import jsonschema

MUST_REJECT = {"truncated.json", "wrong-version.json", "zero-weight.json"}


def check(validator, path):
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        return f"not JSON: {e}"
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    return "; ".join(f"{list(e.absolute_path)}: {e.message}" for e in errors[:3]) or None


def main():
    schema_path, fixtures = pathlib.Path(sys.argv[1]), pathlib.Path(sys.argv[2])
    schema = json.loads(schema_path.read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for path in sorted(fixtures.glob("*.json")):
        err = check(validator, path)
        print(f"{'ok  ' if err is None else 'FAIL'} valid   {path.name}" + (f": {err}" if err else ""))
        failures += err is not None
    for path in sorted((fixtures / "invalid").glob("*.json")):
        err = check(validator, path)
        required = path.name in MUST_REJECT
        bad = required and err is None
        state = "rejected" if err else "accepted"
        print(f"{'FAIL' if bad else 'ok  '} invalid {path.name}: {state}" + (" (must reject)" if required else ""))
        failures += bad
    print(f"{failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
