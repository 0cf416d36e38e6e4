"""Instance files: JSON documents bundling a space, family, map, graph and phi.

Rationals travel as "p/q" strings so Exact mode survives a round trip.
Loading validates against :data:`INSTANCE_SCHEMA` first and then resolves
every cross-reference, raising :class:`InstanceError` with a field path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

import jsonschema

from .contraction import ComparisonFunction
from .errors import DislofixError, InstanceError, InvalidPhi
from .graph import SetGraph, SetMap
from .hausdorff import SetFamily
from .metric import DEFAULT_EPSILON, DislocatedSpace, as_fraction

RATIONAL = {"anyOf": [
    {"type": "integer", "minimum": 0},
    {"type": "string", "pattern": r"^-?(\d+/\d+|\d+(\.\d+)?([eE][-+]?\d+)?)$"},
]}

INSTANCE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["version", "space"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": "1"},
        "note": {"type": "string"},
        "space": {
            "type": "object",
            "required": ["points", "metric"],
            "additionalProperties": False,
            "properties": {
                "points": {
                    "type": "array", "minItems": 1,
                    "items": {
                        "type": "object", "additionalProperties": False,
                        "properties": {"label": {"type": "string"}, "value": RATIONAL},
                    },
                },
                "metric": {
                    "type": "object", "required": ["kind"], "additionalProperties": False,
                    "properties": {
                        "kind": {"enum": ["table", "max", "max_plus_discrete"]},
                        "table": {"type": "array", "items": {"type": "array", "items": RATIONAL}},
                    },
                },
                "arithmetic": {"enum": ["exact", "float"]},
                "epsilon": RATIONAL,
            },
        },
        "family": {
            "type": "array", "minItems": 1,
            "items": {"type": "array", "minItems": 1,
                      "items": {"type": "integer", "minimum": 0}},
        },
        "map": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "graph": {
            "type": "object", "required": ["edges"], "additionalProperties": False,
            "properties": {
                "edges": {"type": "array", "items": {
                    "type": "array", "minItems": 2, "maxItems": 2,
                    "items": {"type": "integer", "minimum": 0}}},
                "diagonal": {"type": "boolean"},
            },
        },
        "phi": {
            "type": "object", "required": ["kind"], "additionalProperties": False,
            "properties": {
                "kind": {"enum": ["linear", "rational_shrink", "table"]},
                "lambda": RATIONAL,
                "table": {"type": "array", "items": {
                    "type": "array", "minItems": 2, "maxItems": 2, "items": RATIONAL}},
            },
        },
        "trace": {"type": "object"},
        "counterexample": {"type": "object"},
    },
}

_validator = jsonschema.Draft202012Validator(INSTANCE_SCHEMA)


@dataclass
class Instance:
    space: DislocatedSpace
    family: Optional[SetFamily] = None
    map: Optional[SetMap] = None
    graph: Optional[SetGraph] = None
    phi: Optional[ComparisonFunction] = None

    def missing(self) -> list:
        return [k for k in ("family", "map", "graph", "phi") if getattr(self, k) is None]


def _path(err) -> str:
    out = ""
    for p in err.absolute_path:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else p)
    return out or "<root>"


def parse_instance(doc: dict) -> Instance:
    """Validate a decoded JSON document and build the instance objects."""
    errors = sorted(_validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise InstanceError(e.message, path=_path(e))
    sp = doc["space"]
    exact = sp.get("arithmetic", "exact") == "exact"
    try:
        eps = float(as_fraction(sp["epsilon"])) if "epsilon" in sp else DEFAULT_EPSILON
        labels = [p.get("label") for p in sp["points"]]
        kind = sp["metric"]["kind"]
        if kind == "table":
            if "table" not in sp["metric"]:
                raise InstanceError("table metric needs a table", path="space.metric.table")
            table = sp["metric"]["table"]
            if len(table) != len(labels):
                raise InstanceError(f"table has {len(table)} rows for {len(labels)} points",
                                    path="space.metric.table")
            space = DislocatedSpace.from_table(table, labels, exact=exact, epsilon=eps)
        else:
            vals = [p.get("value") for p in sp["points"]]
            if any(v is None for v in vals):
                raise InstanceError("formula metric needs a value on every point",
                                    path="space.points")
            space = DislocatedSpace.from_formula(kind, vals, labels, exact=exact, epsilon=eps)
    except ZeroDivisionError as exc:
        raise InstanceError(str(exc), path="space") from exc
    except InstanceError:
        raise
    except DislofixError as exc:
        raise InstanceError(str(exc), path="space") from exc

    inst = Instance(space)
    try:
        if "family" in doc:
            inst.family = SetFamily(space, doc["family"])
        n = len(inst.family) if inst.family is not None else None
        if "map" in doc:
            if n is None or len(doc["map"]) != n:
                raise InstanceError("map must have one image per family member", path="map")
            inst.map = SetMap(tuple(doc["map"]))
        if "graph" in doc:
            if n is None:
                raise InstanceError("graph needs a family", path="graph")
            g = doc["graph"]
            inst.graph = SetGraph(n, tuple(tuple(e) for e in g["edges"]), g.get("diagonal", True))
    except InstanceError:
        raise
    except (DislofixError, IndexError, ValueError) as exc:
        raise InstanceError(str(exc), path=next(k for k in ("graph", "map", "family") if k in doc))

    if "phi" in doc:
        ph = doc["phi"]
        try:
            if ph["kind"] == "linear":
                if "lambda" not in ph:
                    raise InstanceError("linear phi needs lambda", path="phi.lambda")
                inst.phi = ComparisonFunction.linear(ph["lambda"])
            elif ph["kind"] == "rational_shrink":
                inst.phi = ComparisonFunction.rational_shrink()
            else:
                if "table" not in ph:
                    raise InstanceError("table phi needs a table", path="phi.table")
                inst.phi = ComparisonFunction.table(ph["table"])
        except ZeroDivisionError as exc:
            raise InstanceError(str(exc), path="phi") from exc
    return inst


def loads_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(exc.msg, line=exc.lineno) from exc
    return parse_instance(doc)


def load_instance(path) -> Instance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc.strerror}") from exc
    return loads_instance(text)


def _rat(x) -> str:
    return str(x) if isinstance(x, Fraction) else repr(float(x))


def instance_to_dict(inst: Instance) -> dict:
    sp = inst.space
    points = []
    for p in sp.points:
        d = {}
        if p.label is not None:
            d["label"] = p.label
        if p.value is not None:
            d["value"] = str(p.value)
        points.append(d)
    metric = {"kind": sp.metric}
    if sp.metric == "table":
        metric["table"] = [[_rat(x) for x in row] for row in sp.table]
    space = {"points": points, "metric": metric,
             "arithmetic": "exact" if sp.exact else "float"}
    if not sp.exact and sp.epsilon != DEFAULT_EPSILON:
        space["epsilon"] = repr(sp.epsilon)
    doc = {"version": "1", "space": space}
    if inst.family is not None:
        doc["family"] = [list(s.members) for s in inst.family]
    if inst.map is not None:
        doc["map"] = list(inst.map.image)
    if inst.graph is not None:
        doc["graph"] = {"edges": [list(e) for e in inst.graph.edges],
                        "diagonal": inst.graph.include_diagonal}
    if inst.phi is not None:
        doc["phi"] = inst.phi.to_dict()
    return doc


def dumps(doc) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
