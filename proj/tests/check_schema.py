"""Validates scenario files against the JSON schema.

Files named invalid_*.json must be rejected; every other *.json must be accepted.
"""
import json
import pathlib
import sys

import jsonschema


def main() -> int:
    schema = json.loads(pathlib.Path(sys.argv[1]).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for directory in sys.argv[2:]:
        for path in sorted(pathlib.Path(directory).glob("*.json")):
            errors = list(validator.iter_errors(json.loads(path.read_text())))
            expect_invalid = path.name.startswith("invalid_")
            ok = bool(errors) == expect_invalid
            failures += not ok
            state = "rejected" if errors else "accepted"
            print(f"{'PASS' if ok else 'FAIL'} {path.name}: {state}")
            if not ok and errors:
                print("  " + errors[0].message)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
