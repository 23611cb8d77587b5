"""Validate dtk JSON output against the shipped schema.

usage: validate_report.py SCHEMA (analysis|gamma-probe) FILE...
"""
import json
import sys

import jsonschema


def main(argv):
    if len(argv) < 4:
        print(__doc__)
        return 1
    with open(argv[1]) as f:
        schema = json.load(f)
    if argv[2] == "gamma-probe":
        schema = dict(schema, **schema["$defs"]["gamma_probe_report"])
        schema.pop("title", None)
    cls = jsonschema.validators.validator_for(schema)
    cls.check_schema(schema)
    validator = cls(schema)
    bad = 0
    for path in argv[3:]:
        with open(path) as f:
            doc = json.load(f)
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        for e in errors:
            print(f"{path}: {'/'.join(map(str, e.path))}: {e.message}")
        bad += bool(errors)
        print(f"{path}: {'invalid' if errors else 'valid'}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
