#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Result serialization for warpiso.
Canonical JSON envelopes validated against a schema, and flat text rendering.
"""

import json
import logging
import math
from enum import Enum

import numpy as np
from jsonschema import Draft7Validator

from src.core.errors import VerificationError

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
SIGNIFICANT_DIGITS = 15

COMMANDS = ["cheeger", "spectrum", "profile", "ratio", "bound", "oracle", "curvature", "verify", "config", "sweep"]

NUMBER = {"oneOf": [{"type": "number"}, {"enum": ["inf", "-inf", "nan"]}]}
BOOLEAN = {"type": "boolean"}
STRING = {"type": "string"}

ENVELOPE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["schema", "command"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "command": {"enum": COMMANDS},
    },
}

# Payload fields each command must carry, with their types
COMMAND_FIELDS = {
    "cheeger": {"alpha": NUMBER, "h_upper": NUMBER, "h_lower": NUMBER, "certified": BOOLEAN},
    "spectrum": {"lambda0": NUMBER, "half_width": NUMBER, "grid_n": {"type": "integer"},
                 "boundary_condition": {"enum": ["dirichlet", "neumann"]}},
    "profile": {"kind": STRING, "samples": {"type": "array", "items": {"type": "array", "items": NUMBER}}},
    "ratio": {"ratios": {"type": "array"}},
    "bound": {"bound": NUMBER, "case_taken": {"enum": ["CoreDominates", "ProfileCase"]},
              "equality_possible": BOOLEAN, "h_fuchsian": NUMBER},
    "oracle": {"quotient": NUMBER, "intervals": {"type": "array"}},
    "curvature": {"ric_radial": NUMBER, "ric_tangential": NUMBER, "scalar": NUMBER, "at_r": NUMBER},
    "verify": {"suite": STRING, "passed": BOOLEAN},
    "config": {"settings": {"type": "object"}},
    "sweep": {"parameter": STRING, "results": {"type": "array"}},
}


def round_float(value):
    """Round to 15 significant digits; non-finite values become strings"""
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return float(f"{value:.{SIGNIFICANT_DIGITS}g}")


def normalize(value):
    """Convert a result payload into plain JSON types with rounded floats"""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return round_float(value)
    if isinstance(value, Enum):
        return normalize(value.value)
    if isinstance(value, dict):
        return {str(key): normalize(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [normalize(item) for item in value]
    if hasattr(value, "to_dict"):
        return normalize(value.to_dict())
    if value is None or isinstance(value, str):
        return value
    raise TypeError(f"cannot serialize {type(value).__name__}")


def envelope_schema(command):
    """The envelope schema extended with the required fields of a command"""
    fields = COMMAND_FIELDS.get(command, {})
    schema = dict(ENVELOPE_SCHEMA)
    schema["required"] = ENVELOPE_SCHEMA["required"] + sorted(fields)
    schema["properties"] = {**ENVELOPE_SCHEMA["properties"], **fields}
    return schema


def make_envelope(command, payload):
    """Wrap a payload in the versioned envelope and validate it"""
    document = {"schema": SCHEMA_VERSION, "command": command}
    document.update(normalize(payload))

    validator = Draft7Validator(envelope_schema(command))
    errors = sorted(validator.iter_errors(document), key=lambda error: list(error.path))
    if errors:
        messages = "; ".join(error.message for error in errors)
        raise VerificationError(f"result for {command!r} does not match its schema: {messages}")
    return document


def dumps_canonical(document):
    """Sorted keys, 2-space indent, trailing newline"""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def flatten(document, prefix=""):
    """Dotted key paths to leaf values; list items are indexed"""
    items = []
    if isinstance(document, dict):
        for key in sorted(document):
            items.extend(flatten(document[key], f"{prefix}.{key}" if prefix else str(key)))
    elif isinstance(document, list):
        for index, item in enumerate(document):
            items.extend(flatten(item, f"{prefix}.{index}"))
    else:
        items.append((prefix, document))
    return items


def render_text(document):
    """key = value lines, one per leaf"""
    lines = []
    for key, value in flatten(document):
        if isinstance(value, bool):
            value = "true" if value else "false"
        elif value is None:
            value = "null"
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"
