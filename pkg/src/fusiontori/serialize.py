"""JSON fragments, schemas and loaders for fields, rings, modules, thetas and invariants."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

import jsonschema

from .errors import InvalidParameter, SchemaError
from .fusion import FusionRing
from .ktheory import ElliottInvariant, StationaryData, stationary_data
from .nctorus import ThetaMatrix, theta_from_upper
from .nimrep import NimRep, hi_rank2, make_nimrep, regular
from .numfield import AlgebraicReal, NumberField, named_field
from .presets import parse_group, ring_preset

# -- schemas -------------------------------------------------------------------

_RATIONAL = {"oneOf": [
    {"type": "integer"},
    {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
    {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
]}

FIELD_SCHEMA = {"oneOf": [
    {"type": "string"},
    {"type": "object", "required": ["minpoly", "root"], "properties": {
        "minpoly": {"type": "array", "items": {"type": "integer"}, "minItems": 2},
        "root": {"type": "object", "required": ["lo", "hi"],
                 "properties": {"lo": _RATIONAL, "hi": _RATIONAL}},
    }},
]}

ELEMENT_SCHEMA = {"type": "object", "required": ["field", "coords"], "properties": {
    "field": FIELD_SCHEMA, "coords": {"type": "array", "items": _RATIONAL}}}

RING_SCHEMA = {"type": "object", "required": ["labels", "unit", "dual", "N"], "properties": {
    "labels": {"type": "array", "items": {"type": "string"}, "minItems": 1},
    "unit": {"type": "string"},
    "dual": {"type": "object", "additionalProperties": {"type": "string"}},
    "N": {"type": "array", "items": {"type": "array", "minItems": 4, "maxItems": 4,
                                     "prefixItems": [{"type": "string"}] * 3 + [{"type": "integer"}]}},
    "name": {"type": "string"},
}}

NIMREP_SCHEMA = {"type": "object", "required": ["ring", "matrices"], "properties": {
    "ring": {"oneOf": [{"type": "string"}, RING_SCHEMA]},
    "rank": {"type": "integer", "minimum": 1},
    "basis": {"type": "array", "items": {"type": "string"}},
    "matrices": {"type": "object", "additionalProperties": {
        "type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}}},
}}

STATIONARY_SCHEMA = {"type": "object", "required": ["nimrep", "X"], "properties": {
    "nimrep": {"oneOf": [{"type": "string"}, NIMREP_SCHEMA]},
    "w": {"type": "array", "items": {"type": "integer", "minimum": 1}},
    "X": {"type": "array", "items": {"type": "string"}, "minItems": 1},
    "dual_assumption": {"type": ["string", "null"]},
}}

THETA_SCHEMA = {"type": "object", "required": ["n", "field", "entries_upper"], "properties": {
    "n": {"type": "integer", "minimum": 1},
    "field": FIELD_SCHEMA,
    "entries_upper": {"type": "array", "items": {"type": "array", "minItems": 3, "maxItems": 3}},
}}

INVARIANT_SCHEMA = {"type": "object", "required": ["k0_rank", "k1_rank", "field", "lattice", "order_unit"],
                    "properties": {
                        "k0_rank": {"type": "integer", "minimum": 1},
                        "k1_rank": {"type": "integer", "minimum": 0},
                        "field": FIELD_SCHEMA,
                        "lattice": {"type": "array", "items": {"type": "array", "items": _RATIONAL}},
                        "order_unit": {"type": "array", "items": _RATIONAL},
                        "simple_unique_trace": {"type": "boolean"},
                    }}

REPORT_SCHEMA = {"type": "object", "required": ["command", "checks", "metadata", "ok"], "properties": {
    "command": {"type": "string"},
    "ok": {"type": "boolean"},
    "checks": {"type": "array", "items": {
        "type": "object", "required": ["name", "status", "details"],
        "properties": {"name": {"type": "string"},
                       "status": {"enum": ["pass", "fail", "error", "assumed"]},
                       "details": {"type": "object"}}}},
    "metadata": {"type": "object"},
}}


def validate(obj: Any, schema: dict, what: str) -> None:
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as e:
        raise SchemaError(f"{what}: {e.message}") from None


# -- rationals, fields, elements ---------------------------------------------

def rational_from_json(x) -> Fraction:
    if isinstance(x, bool):
        raise SchemaError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    raise SchemaError(f"cannot read rational from {x!r}")


def rational_to_json(q: Fraction) -> list[int]:
    q = Fraction(q)
    return [q.numerator, q.denominator]


def field_to_json(F: NumberField) -> dict | str:
    if F.name and (F.name.startswith("cos_pi_over_") or F.name.startswith("phi_") or F.name == "QQ"):
        return F.name
    return {"minpoly": list(F.minpoly),
            "root": {"lo": rational_to_json(F.root[0]), "hi": rational_to_json(F.root[1])}}


def field_from_json(obj) -> NumberField:
    validate(obj, FIELD_SCHEMA, "field")
    if isinstance(obj, str):
        return named_field(obj)
    lo, hi = rational_from_json(obj["root"]["lo"]), rational_from_json(obj["root"]["hi"])
    return NumberField(obj["minpoly"], (lo, hi))


def element_to_json(a: AlgebraicReal) -> dict:
    return {"field": field_to_json(a.field), "coords": [rational_to_json(c) for c in a.coords]}


def element_from_json(obj, field: NumberField | None = None) -> AlgebraicReal:
    if isinstance(obj, dict):
        validate(obj, ELEMENT_SCHEMA, "element")
        F = field_from_json(obj["field"])
        return F.element([rational_from_json(c) for c in obj["coords"]])
    if field is None:
        raise SchemaError("bare coordinates need an enclosing field")
    if isinstance(obj, list):
        return field.element([rational_from_json(c) for c in obj])
    return field(rational_from_json(obj))


# -- rings -------------------------------------------------------------------

def ring_to_json(R: FusionRing) -> dict:
    L = R.labels
    N = [[L[a], L[b], L[c], int(R.N[a, b, c])]
         for a in range(R.rank) for b in range(R.rank) for c in range(R.rank) if R.N[a, b, c]]
    return {"name": R.name, "labels": list(L), "unit": L[R.unit],
            "dual": {L[a]: L[R.dual[a]] for a in range(R.rank)}, "N": N}


def ring_from_json(obj) -> FusionRing:
    if isinstance(obj, str):
        return ring_preset(obj)
    validate(obj, RING_SCHEMA, "fusion ring")
    import numpy as np
    labels = list(obj["labels"])
    pos = {a: i for i, a in enumerate(labels)}
    try:
        r = len(labels)
        N = np.zeros((r, r, r), dtype=np.int64)
        for a, b, c, m in obj["N"]:
            N[pos[a], pos[b], pos[c]] = int(m)
        dual = [pos[obj["dual"].get(a, a)] for a in labels]
        unit = pos[obj["unit"]]
    except KeyError as e:
        raise SchemaError(f"unknown label {e.args[0]!r} in fusion ring") from None
    return FusionRing(tuple(labels), unit, tuple(dual), N, name=obj.get("name", "custom"))


# -- modules -------------------------------------------------------------------

def nimrep_preset(name: str) -> NimRep:
    """``regular:<ring preset>`` or ``hi_rank2:<group>``; a bare ring preset means its regular module."""
    head, _, arg = name.partition(":")
    if head == "regular" and arg:
        return regular(ring_preset(arg))
    if head == "hi_rank2" and arg:
        return hi_rank2(parse_group(arg))
    return regular(ring_preset(name))


def nimrep_to_json(nr: NimRep) -> dict:
    return {"ring": ring_to_json(nr.ring), "rank": nr.rank, "basis": list(nr.basis),
            "matrices": {nr.ring.labels[a]: nr.matrix(a) for a in range(nr.ring.rank)}}


def nimrep_from_json(obj, base: Path | None = None) -> NimRep:
    if isinstance(obj, str):
        p = _maybe_path(obj, base)
        if p is not None:
            return nimrep_from_json(load_json(p), p.parent)
        return nimrep_preset(obj)
    validate(obj, NIMREP_SCHEMA, "nimrep")
    ring = ring_from_json(_resolve(obj["ring"], base))
    nr = make_nimrep(ring, obj["matrices"], obj.get("basis"))
    if "rank" in obj and obj["rank"] != nr.rank:
        raise SchemaError(f"declared rank {obj['rank']} but matrices have size {nr.rank}")
    return nr


def stationary_from_json(obj, base: Path | None = None, assume_hi_dual: bool = False) -> StationaryData:
    validate(obj, STATIONARY_SCHEMA, "stationary data")
    nr = nimrep_from_json(obj["nimrep"], base)
    da = obj.get("dual_assumption")
    if assume_hi_dual and da is None:
        da = "hi_hat"
    return stationary_data(nr, obj.get("w"), obj["X"], da)


# -- theta -----------------------------------------------------------------------

def theta_to_json(th: ThetaMatrix) -> dict:
    return {"n": th.n, "field": field_to_json(th.field),
            "entries_upper": [[i + 1, j + 1, [rational_to_json(c) for c in th[i, j].coords]]
                              for i in range(th.n) for j in range(i + 1, th.n)]}


def theta_from_json(obj) -> ThetaMatrix:
    """Upper-triangle entries use 1-based ``[i, j, coords]`` triples."""
    validate(obj, THETA_SCHEMA, "theta")
    F = field_from_json(obj["field"])
    upper = {}
    for i, j, coords in obj["entries_upper"]:
        if not (1 <= i < j <= obj["n"]):
            raise SchemaError(f"bad upper-triangle index ({i}, {j})")
        cs = coords if isinstance(coords, list) else [coords]
        upper[(i - 1, j - 1)] = F.element([rational_from_json(c) for c in cs])
    return theta_from_upper(obj["n"], upper)


# -- invariants ------------------------------------------------------------------

def invariant_to_json(inv: ElliottInvariant) -> dict:
    return {"k0_rank": inv.k0_rank, "k1_rank": inv.k1_rank, "field": field_to_json(inv.order_unit.field),
            "lattice": [[rational_to_json(c) for c in x.coords] for x in inv.lattice],
            "order_unit": [rational_to_json(c) for c in inv.order_unit.coords],
            "simple_unique_trace": inv.simple_unique_trace}


def invariant_from_json(obj) -> ElliottInvariant:
    validate(obj, INVARIANT_SCHEMA, "invariant")
    F = field_from_json(obj["field"])
    lat = tuple(F.element([rational_from_json(c) for c in v]) for v in obj["lattice"])
    u = F.element([rational_from_json(c) for c in obj["order_unit"]])
    return ElliottInvariant(obj["k0_rank"], obj["k1_rank"], lat, u, obj.get("simple_unique_trace", True),
                            {"source": "json"})


# -- files ---------------------------------------------------------------------

def load_json(path: str | Path) -> Any:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise InvalidParameter(f"cannot read {p}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{p}: invalid JSON ({e.msg} at line {e.lineno})") from None


def _maybe_path(s: str, base: Path | None) -> Path | None:
    if not (s.endswith(".json") or "/" in s):
        return None
    p = Path(s)
    if not p.is_absolute() and base is not None:
        p = base / p
    return p


def _resolve(obj, base: Path | None):
    if isinstance(obj, str):
        p = _maybe_path(obj, base)
        if p is not None:
            return load_json(p)
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
