#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Profile curve ingest and emit for warpiso.
CSV with a V,A header and the JSON mirror {"kind", "samples"}.
"""

import csv
import io
import json
import logging
from pathlib import Path

from jsonschema import Draft7Validator

from src.core.errors import ProfileValidationError
from src.core.profiles import ProfileCurve, ProfileKind
from src.utils.serialization import dumps_canonical, round_float

logger = logging.getLogger(__name__)

CSV_HEADER = ["V", "A"]

PROFILE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["kind", "samples"],
    "properties": {
        "kind": {"enum": [kind.value for kind in ProfileKind]},
        "samples": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "array",
                "minItems": 2,
                "maxItems": 2,
                "items": {"type": "number"},
            },
        },
    },
}


def curve_to_csv(curve):
    """CSV text of a curve, LF line endings"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for V, A in curve.samples:
        writer.writerow([repr(round_float(V)), repr(round_float(A))])
    return buffer.getvalue()


def curve_from_csv(text, kind=ProfileKind.EXTERNAL):
    """Parse CSV text with a V,A header into a validated curve"""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [cell.strip() for cell in rows[0]] != CSV_HEADER:
        raise ProfileValidationError("profile CSV must start with the header V,A")

    samples = []
    for line, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 2:
            raise ProfileValidationError(f"line {line}: expected 2 columns, got {len(row)}")
        try:
            samples.append((float(row[0]), float(row[1])))
        except ValueError:
            raise ProfileValidationError(f"line {line}: not a number in {row!r}")

    return ProfileCurve(tuple(samples), kind)


def curve_to_json(curve):
    """Canonical JSON text of a curve"""
    document = {
        "kind": curve.kind.value,
        "samples": [[round_float(V), round_float(A)] for V, A in curve.samples],
    }
    return dumps_canonical(document)


def curve_from_json(text):
    """Parse and validate the JSON mirror of a curve"""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProfileValidationError(f"profile JSON is malformed: {e}")

    errors = list(Draft7Validator(PROFILE_SCHEMA).iter_errors(document))
    if errors:
        raise ProfileValidationError(f"profile JSON is invalid: {errors[0].message}")

    return ProfileCurve(tuple(tuple(sample) for sample in document["samples"]), ProfileKind(document["kind"]))


def read_curve(path):
    """Load a curve from a .csv or .json file"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ProfileValidationError(f"cannot read profile {path}: {e}")

    logger.debug("Reading profile curve from %s", path)
    if path.suffix.lower() == ".json":
        return curve_from_json(text)
    return curve_from_csv(text)


def write_curve(curve, path):
    """Write a curve as CSV or JSON depending on the file extension"""
    path = Path(path)
    text = curve_to_json(curve) if path.suffix.lower() == ".json" else curve_to_csv(curve)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    logger.info("Wrote %d profile samples to %s", len(curve), path)
