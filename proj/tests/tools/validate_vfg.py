#!/usr/bin/env python3
"""Validate a VFG document against the JSON schema and check step indices.

usage: validate_vfg.py SCHEMA DOCUMENT [--frames DIR --fps N]

With --frames, also checks the frame count law against the document:
sum(ceil(duration * fps)) over transitions + number of steps.
"""
import argparse
import json
import math
import pathlib
import sys

import jsonschema


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("schema")
    ap.add_argument("document")
    ap.add_argument("--frames")
    ap.add_argument("--fps", type=int, default=30)
    args = ap.parse_args()

    schema = json.loads(pathlib.Path(args.schema).read_text())
    doc = json.loads(pathlib.Path(args.document).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    for e in errors:
        print(f"{args.document}: /{'/'.join(map(str, e.path))}: {e.message}", file=sys.stderr)
    if errors:
        return 1

    for i, step in enumerate(doc["steps"]):
        if step["index"] != i:
            print(f"steps[{i}].index is {step['index']}", file=sys.stderr)
            return 1

    if args.frames:
        expected = len(doc["steps"])
        for step in doc["steps"][1:]:
            product = step["transition"]["durationSeconds"] * args.fps
            rounded = round(product)
            expected += rounded if abs(product - rounded) < 1e-9 else math.ceil(product)
        found = len(list(pathlib.Path(args.frames).glob("frame-*.svg")))
        if found != expected:
            print(f"expected {expected} frames, found {found}", file=sys.stderr)
            return 1
        print(f"{found} frames")
    print(f"{args.document}: valid, {len(doc['steps'])} steps")
    return 0


if __name__ == "__main__":
    sys.exit(main())
