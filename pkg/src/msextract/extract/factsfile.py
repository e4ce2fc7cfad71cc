"""Facts file: the JSON exchange format between extraction and the rest of the pipeline.

Any external extractor can feed the pipeline by writing this format::

    {"classes": [{"name": str, "path": str, "identifiers": [str], "comments": [str]}],
     "calls": [{"from": str, "to": str, "count": int}]}

Class ids are assigned by sorting on ``name``; absent pairs have count 0.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Union

import jsonschema

from ..errors import FactsValidationError
from .model import ProjectFacts, build_facts

FACTS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["classes", "calls"],
    "properties": {
        "classes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "path", "identifiers", "comments"],
                "properties": {
                    "name": {"type": "string", "minLength": 1},
                    "path": {"type": "string"},
                    "identifiers": {"type": "array", "items": {"type": "string"}},
                    "comments": {"type": "array", "items": {"type": "string"}},
                },
                "additionalProperties": False,
            },
        },
        "calls": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["from", "to", "count"],
                "properties": {
                    "from": {"type": "string"},
                    "to": {"type": "string"},
                    "count": {"type": "integer", "minimum": 0},
                },
                "additionalProperties": False,
            },
        },
    },
}

PathLike = Union[str, Path]


def facts_to_dict(facts: ProjectFacts) -> dict:
    counts = facts.call_graph.counts
    names = facts.names
    calls = [
        {"from": names[i], "to": names[j], "count": int(counts[i, j])}
        for i in range(facts.n)
        for j in range(facts.n)
        if counts[i, j] > 0
    ]
    return {
        "classes": [
            {
                "name": c.qualified_name,
                "path": c.source_path,
                "identifiers": list(c.identifiers),
                "comments": list(c.comments),
            }
            for c in facts.classes
        ],
        "calls": calls,
    }


def facts_from_dict(data: dict) -> ProjectFacts:
    try:
        jsonschema.validate(data, FACTS_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise FactsValidationError(f"facts file invalid at {where}: {exc.message}") from None

    seen_pairs = set()
    for k, call in enumerate(data["calls"]):
        pair = (call["from"], call["to"])
        if pair in seen_pairs:
            raise FactsValidationError(f"facts file invalid at calls/{k}: duplicate pair {pair[0]} -> {pair[1]}")
        seen_pairs.add(pair)

    names = [c["name"] for c in data["classes"]]
    dup = sorted({n for n in names if names.count(n) > 1})
    if dup:
        raise FactsValidationError(f"facts file invalid at classes: duplicate name(s) {', '.join(dup)}")
    known = set(names)
    for k, call in enumerate(data["calls"]):
        for key in ("from", "to"):
            if call[key] not in known:
                raise FactsValidationError(
                    f"facts file invalid at calls/{k}/{key}: {call[key]!r} is not a declared class"
                )

    return build_facts(
        data["classes"],
        [(c["from"], c["to"], c["count"]) for c in data["calls"]],
    )


def dumps_facts(facts: ProjectFacts) -> str:
    return json.dumps(facts_to_dict(facts), indent=2, ensure_ascii=False) + "\n"


def save_facts(facts: ProjectFacts, path: PathLike) -> None:
    Path(path).write_text(dumps_facts(facts), encoding="utf-8")


def load_facts(path: PathLike) -> ProjectFacts:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FactsValidationError(f"facts file {path} is not valid JSON: {exc}") from None
    return facts_from_dict(data)
