"""Versioned JSON schema for every CLI report."""

from __future__ import annotations

import copy

import jsonschema

SCHEMA_VERSION = "shortc2-report/1"

_NUM = {"type": "number"}
_NULLABLE_NUM = {"type": ["number", "null"]}
_INT = {"type": "integer"}

_GREEN = {
    "type": "object",
    "required": ["value", "error_bound", "iterations", "escaped"],
    "properties": {
        "value": {"type": "number", "minimum": 0},
        "error_bound": {"type": ["number", "null"], "minimum": 0},
        "iterations": {"type": "integer", "minimum": 0},
        "escaped": {"type": "boolean"},
        "status": {"enum": ["escaped", "bounded", "undecided"]},
    },
}

_CHECK = {
    "type": "object",
    "required": ["name", "passed", "max_error", "tolerance", "samples"],
    "properties": {
        "name": {"type": "string"},
        "passed": {"type": "boolean"},
        "max_error": _NUM,
        "tolerance": _NUM,
        "samples": {"type": "integer", "minimum": 0},
        "details": {"type": "object"},
    },
}

_SUITE = {
    "type": "object",
    "required": ["suite", "passed", "checks"],
    "properties": {
        "suite": {"type": "string"},
        "passed": {"type": "boolean"},
        "checks": {"type": "array", "items": _CHECK},
    },
}

_POINT = {"type": "array", "items": {"type": ["number", "string"]}, "minItems": 4, "maxItems": 4}
_COMPLEX = {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}

_RESULTS = {
    "green": {
        "type": "object",
        "required": ["point", "which", "estimate"],
        "properties": {"point": _POINT, "which": {"enum": ["plus", "minus"]}, "estimate": _GREEN},
    },
    "member": {
        "type": "object",
        "required": ["point", "level", "tag", "estimate"],
        "properties": {
            "point": _POINT,
            "level": _NUM,
            "tag": {"enum": ["K_plus", "Omega_prime_interior", "boundary_unresolved", "outside"]},
            "estimate": _GREEN,
        },
    },
    "render": {
        "type": "object",
        "required": ["csv", "pgm", "sidecar", "shape", "cells", "max_value", "max_error_bound"],
        "properties": {
            "shape": {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2},
            "cells": _INT,
            "max_value": _NUM,
            "max_error_bound": _NUM,
        },
    },
    "loop-class": {
        "type": "object",
        "required": ["class", "d", "value"],
        "properties": {
            "class": {"type": "object", "required": ["k", "n"], "properties": {"k": _INT, "n": {"type": "integer", "minimum": 0}}},
            "d": _INT,
            "value": _NUM,
        },
    },
    "connect": {
        "type": "object",
        "required": ["path_file", "samples", "n0", "eps", "radius", "margin_factor", "max_green", "error_bound"],
        "properties": {
            "samples": _INT,
            "n0": _INT,
            "eps": _NUM,
            "radius": _NUM,
            "margin_factor": _NUM,
            "max_green": _NUM,
            "error_bound": _NUM,
        },
    },
    "affine-group": {
        "type": "object",
        "required": ["d", "modulus", "order", "generator_exponent", "elements"],
        "properties": {"order": _INT, "generator_exponent": _INT, "elements": {"type": "array", "items": _INT}},
    },
    "deck": {
        "type": "object",
        "oneOf": [
            {
                "required": ["class", "point", "image", "error_bound"],
                "properties": {
                    "class": {"type": "object", "required": ["k", "n"]},
                    "point": {"type": "object", "required": ["z", "zeta", "c"]},
                    "image": {"type": "object", "required": ["z", "zeta", "c"],
                              "properties": {"z": _COMPLEX, "zeta": _COMPLEX, "c": _NUM}},
                    "error_bound": _NUM,
                },
            },
            _SUITE,
        ],
    },
    "bihol": {
        "type": "object",
        "required": ["n"],
        "properties": {"n": {"type": ["integer", "null"]}, "c1": {"type": "string"}, "c2": {"type": "string"}, "d": _INT},
    },
    "verify": _SUITE,
    "schema": {"type": "object"},
}


def report_schema() -> dict:
    branches = [
        {"if": {"properties": {"command": {"const": cmd}}}, "then": {"properties": {"result": res}}}
        for cmd, res in _RESULTS.items()
    ]
    return copy.deepcopy({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$id": SCHEMA_VERSION,
        "title": "shortc2 report",
        "type": "object",
        "required": ["schema_version", "command", "result"],
        "properties": {
            "schema_version": {"const": SCHEMA_VERSION},
            "command": {"enum": sorted(_RESULTS)},
            "result": {"type": "object"},
            "metadata": {"type": "object"},
        },
        "allOf": branches,
    })


def envelope(command: str, result: dict, metadata: dict | None = None) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "command": command, "result": result}
    if metadata:
        doc["metadata"] = metadata
    return doc


def validate_report(doc: dict) -> None:
    """Raise jsonschema.ValidationError if ``doc`` is not a valid report."""
    jsonschema.Draft202012Validator(report_schema()).validate(doc)


def is_valid(doc: dict) -> bool:
    return jsonschema.Draft202012Validator(report_schema()).is_valid(doc)
