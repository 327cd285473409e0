"""Validate JSON files against the shipped schemas.

usage: validate_json.py DOCS_DIR SCHEMA FILE [SCHEMA FILE ...]
"""

import json
import pathlib
import sys

import jsonschema
from referencing import Registry, Resource


def main(argv):
    docs = pathlib.Path(argv[1])
    schemas = {p.name: json.loads(p.read_text()) for p in docs.glob("*.schema.json")}
    registry = Registry().with_resources((name, Resource.from_contents(s)) for name, s in schemas.items())
    failed = 0
    for schema_name, path in zip(argv[2::2], argv[3::2]):
        validator = jsonschema.Draft202012Validator(schemas[schema_name], registry=registry)
        errors = sorted(validator.iter_errors(json.loads(pathlib.Path(path).read_text())), key=str)
        for e in errors:
            print(f"{path}: {'/'.join(map(str, e.absolute_path))}: {e.message}")
        print(f"{'ok  ' if not errors else 'FAIL'} {path} against {schema_name}")
        failed += bool(errors)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
