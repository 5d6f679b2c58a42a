"""Versioned JSON report format shared by every CLI command."""
from __future__ import annotations

import json

import jsonschema

from . import __version__

SCHEMA_ID = "https://hopfgal.invalid/report.schema.json"

_WITNESS = {"description": "machine-readable evidence; present on every negative certificate"}

CERTIFICATE = {
    "type": "object",
    "required": ["name", "holds"],
    "properties": {
        "name": {"type": "string"},
        "holds": {"type": "boolean"},
        "rank": {"type": "integer", "minimum": 0},
        "source_dim": {"type": "integer", "minimum": 0},
        "target_dim": {"type": "integer", "minimum": 0},
        "bijective": {"type": "boolean"},
        "injective": {"type": "boolean"},
        "surjective": {"type": "boolean"},
        "closed": {"type": "boolean"},
        "dim": {"type": "integer", "minimum": 0},
        "detail": {},
        "witness": _WITNESS,
    },
    "if": {"properties": {"holds": {"const": False}}},
    "then": {"required": ["witness"]},
    "additionalProperties": False,
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": SCHEMA_ID,
    "title": "hopfgal report",
    "type": "object",
    "required": ["schema_version", "command", "ok", "certificates", "results"],
    "properties": {
        "schema_version": {"const": __version__},
        "command": {"type": "string"},
        "input": {"type": ["object", "null"]},
        "ok": {"type": "boolean"},
        "certificates": {"type": "array", "items": {"$ref": "#/$defs/certificate"}},
        "results": {"type": "object"},
    },
    "$defs": {"certificate": CERTIFICATE},
    "additionalProperties": False,
}


def schema_text() -> str:
    return json.dumps(SCHEMA, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def validate(report: dict) -> None:
    jsonschema.Draft202012Validator(SCHEMA).validate(report)


def certificate(name: str, holds: bool, witness=None, **fields) -> dict:
    out = {"name": name, "holds": bool(holds)}
    out.update({k: v for k, v in fields.items() if v is not None})
    if not holds:
        out["witness"] = witness if witness is not None else {"reason": name}
    elif witness is not None and "detail" not in out:
        out["detail"] = witness
    return out


def make_report(command: str, certificates: list, results: dict, source=None) -> dict:
    rep = {
        "schema_version": __version__,
        "command": command,
        "input": source,
        "ok": all(c["holds"] for c in certificates),
        "certificates": certificates,
        "results": results,
    }
    validate(rep)
    return rep


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
