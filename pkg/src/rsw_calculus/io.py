"""JSON codec for classes, bundles, manifold records and rule outcomes.

Manifold files (``.rswm.json``) are validated against a JSON schema before
decoding; every error names the offending JSON pointer.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import jsonschema

from .charclass import VirtualBundle
from .model import Chamber, RealFourManifold, RealSpinC, Violation
from .ring import IntClass, LaurentClass, Mod2Class, UpToSignClass, mask_from_gens

EXTENSION = ".rswm.json"


class InputError(ValueError):
    """A document failed schema or semantic decoding; ``pointer`` locates it."""

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer or "/"
        self.message = message


_CLASS = {
    "type": "object",
    "additionalProperties": False,
    "required": ["beta", "terms"],
    "properties": {
        "beta": {"type": "integer", "minimum": 0, "maximum": 63},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["gens"],
                "properties": {
                    "gens": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                    "coef": {"type": "integer"},
                },
            },
        },
    },
}

_NULLABLE_CLASS = {"oneOf": [{"type": "null"}, {"$ref": "#/$defs/class"}]}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": {
        "class": _CLASS,
        "bundle": {
            "type": "object",
            "additionalProperties": False,
            "required": ["rank", "total"],
            "properties": {"rank": {"type": "integer"}, "total": {"$ref": "#/$defs/class"}},
        },
        "spinc": {
            "type": "object",
            "additionalProperties": False,
            "required": ["name", "c_squared", "d", "is_spin", "w1_dr_zero", "minus_dr"],
            "properties": {
                "name": {"type": "string"},
                "c_squared": {"type": "integer"},
                "d": {"type": "integer"},
                "is_spin": {"type": "boolean"},
                "w1_dr_zero": {"type": "boolean"},
                "minus_dr": {"$ref": "#/$defs/bundle"},
                "sw_mod2": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["chamber", "m", "class"],
                        "properties": {
                            "chamber": {"enum": [c.value for c in Chamber]},
                            "m": {"type": "integer", "minimum": 0},
                            "class": {"$ref": "#/$defs/class"},
                        },
                    },
                },
                "sw_int": _NULLABLE_CLASS,
                "deg_r": _NULLABLE_CLASS,
                "ordinary_sw_mod2": {
                    "oneOf": [
                        {"type": "null"},
                        {
                            "type": "array",
                            "items": {
                                "type": "object",
                                "additionalProperties": False,
                                "required": ["m", "class"],
                                "properties": {
                                    "m": {"type": "integer", "minimum": 0},
                                    "class": {"$ref": "#/$defs/class"},
                                },
                            },
                        },
                    ]
                },
                "ordinary_sw_int": {"type": ["integer", "null"]},
            },
        },
    },
    "type": "object",
    "additionalProperties": False,
    "required": [
        "name", "b1_total", "b_plus_total", "signature", "b1_minus", "b_plus_minus",
        "has_nonisolated_fixed_point", "fixed_set_connected", "fixed_torus_selfint_zero",
        "psc_invariant_metric", "symplectic_antiinvariant", "spinc",
    ],
    "properties": {
        "name": {"type": "string"},
        "b1_total": {"type": "integer", "minimum": 0},
        "b_plus_total": {"type": "integer", "minimum": 0},
        "signature": {"type": "integer"},
        "b1_minus": {"type": "integer", "minimum": 0},
        "b_plus_minus": {"type": "integer", "minimum": 0},
        "has_nonisolated_fixed_point": {"type": "boolean"},
        "fixed_set_connected": {"type": "boolean"},
        "fixed_torus_selfint_zero": {"type": "boolean"},
        "psc_invariant_metric": {"type": "boolean"},
        "symplectic_antiinvariant": {"type": "boolean"},
        "spinc": {"type": "array", "items": {"$ref": "#/$defs/spinc"}},
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def _pointer(path) -> str:
    return "".join(f"/{p}" for p in path)


# ---- classes ----

def mod2_to_json(c: Mod2Class) -> dict:
    return {"beta": c.beta, "terms": [{"gens": list(t)} for t in c.subsets()]}


def int_to_json(c: IntClass) -> dict:
    return {"beta": c.beta, "terms": [{"gens": list(t), "coef": v} for t, v in
                                      sorted(c.items_lex(), key=lambda kv: (len(kv[0]), kv[0]))]}


def laurent_to_json(c: LaurentClass) -> dict:
    terms = []
    for k in sorted(c.terms):
        for t in c.terms[k].subsets():
            terms.append({"u": k, "gens": list(t)})
    return {"beta": c.beta, "terms": terms}


def _terms(doc: dict, ptr: str):
    beta = doc["beta"]
    seen = set()
    for i, term in enumerate(doc["terms"]):
        where = f"{ptr}/terms/{i}"
        try:
            mask = mask_from_gens(term["gens"], beta)
        except ValueError as exc:
            raise InputError(f"{where}/gens", str(exc)) from None
        key = (term.get("u"), mask)
        if key in seen:
            raise InputError(f"{where}/gens", "duplicate monomial")
        seen.add(key)
        yield term, mask


def mod2_from_json(doc: dict, ptr: str = "") -> Mod2Class:
    mons = set()
    for term, mask in _terms(doc, ptr):
        if term.get("coef", 1) % 2 == 0:
            continue
        mons.add(mask)
    return Mod2Class(doc["beta"], frozenset(mons))


def int_from_json(doc: dict, ptr: str = "") -> IntClass:
    coeffs = {}
    for term, mask in _terms(doc, ptr):
        coeffs[mask] = term.get("coef", 1)
    return IntClass(doc["beta"], coeffs)


def laurent_from_json(doc: dict, ptr: str = "") -> LaurentClass:
    by_u: dict[int, set] = {}
    for term, mask in _terms(doc, ptr):
        by_u.setdefault(term.get("u", 0), set()).add(mask)
    return LaurentClass(doc["beta"], {k: Mod2Class(doc["beta"], frozenset(v)) for k, v in by_u.items()})


def bundle_to_json(v: VirtualBundle) -> dict:
    return {"rank": v.rank, "total": mod2_to_json(v.total)}


def bundle_from_json(doc: dict, ptr: str = "") -> VirtualBundle:
    total = mod2_from_json(doc["total"], f"{ptr}/total")
    try:
        return VirtualBundle(doc["rank"], total)
    except ValueError as exc:
        raise InputError(f"{ptr}/total", str(exc)) from None


# ---- records ----

def spinc_to_json(s: RealSpinC) -> dict:
    sw = [
        {"chamber": ch.value, "m": m, "class": mod2_to_json(c)}
        for (ch, m), c in sorted(s.sw_mod2.items(), key=lambda kv: (kv[0][0].value, kv[0][1]))
    ]
    return {
        "name": s.name,
        "c_squared": s.c_squared,
        "d": s.d,
        "is_spin": s.is_spin,
        "w1_dr_zero": s.w1_dr_zero,
        "minus_dr": bundle_to_json(s.minus_dr),
        "sw_mod2": sw,
        "sw_int": None if s.sw_int is None else int_to_json(s.sw_int.rep),
        "deg_r": None if s.deg_r is None else int_to_json(s.deg_r.rep),
        "ordinary_sw_mod2": None if s.ordinary_sw_mod2 is None else [
            {"m": m, "class": mod2_to_json(c)} for m, c in sorted(s.ordinary_sw_mod2.items())
        ],
        "ordinary_sw_int": s.ordinary_sw_int,
    }


def spinc_from_json(doc: dict, ptr: str = "") -> RealSpinC:
    sw = {}
    for i, e in enumerate(doc.get("sw_mod2", [])):
        key = (Chamber(e["chamber"]), e["m"])
        if key in sw:
            raise InputError(f"{ptr}/sw_mod2/{i}", "duplicate (chamber, m) entry")
        sw[key] = mod2_from_json(e["class"], f"{ptr}/sw_mod2/{i}/class")
    ordinary = None
    if doc.get("ordinary_sw_mod2") is not None:
        ordinary = {}
        for i, e in enumerate(doc["ordinary_sw_mod2"]):
            if e["m"] in ordinary:
                raise InputError(f"{ptr}/ordinary_sw_mod2/{i}", "duplicate m entry")
            ordinary[e["m"]] = mod2_from_json(e["class"], f"{ptr}/ordinary_sw_mod2/{i}/class")

    def opt(key):
        val = doc.get(key)
        return None if val is None else UpToSignClass(int_from_json(val, f"{ptr}/{key}"))

    return RealSpinC(
        name=doc["name"],
        c_squared=doc["c_squared"],
        d=doc["d"],
        is_spin=doc["is_spin"],
        w1_dr_zero=doc["w1_dr_zero"],
        minus_dr=bundle_from_json(doc["minus_dr"], f"{ptr}/minus_dr"),
        sw_mod2=sw,
        sw_int=opt("sw_int"),
        deg_r=opt("deg_r"),
        ordinary_sw_mod2=ordinary,
        ordinary_sw_int=doc.get("ordinary_sw_int"),
    )


_MANIFOLD_FIELDS = (
    "name", "b1_total", "b_plus_total", "signature", "b1_minus", "b_plus_minus",
    "has_nonisolated_fixed_point", "fixed_set_connected", "fixed_torus_selfint_zero",
    "psc_invariant_metric", "symplectic_antiinvariant",
)


def manifold_to_json(m: RealFourManifold) -> dict:
    doc = {f: getattr(m, f) for f in _MANIFOLD_FIELDS}
    doc["spinc"] = [spinc_to_json(s) for s in m.spinc]
    return doc


def validate_document(doc: Any) -> None:
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = errors[0]
        raise InputError(_pointer(err.absolute_path), err.message)


def manifold_from_json(doc: Any) -> RealFourManifold:
    validate_document(doc)
    spinc = tuple(spinc_from_json(s, f"/spinc/{i}") for i, s in enumerate(doc["spinc"]))
    return RealFourManifold(**{f: doc[f] for f in _MANIFOLD_FIELDS}, spinc=spinc)


# ---- generic values and outcomes ----

def value_to_json(value: Any) -> Any:
    if isinstance(value, Mod2Class):
        return mod2_to_json(value)
    if isinstance(value, UpToSignClass):
        return int_to_json(value.rep)
    if isinstance(value, IntClass):
        return int_to_json(value)
    if isinstance(value, LaurentClass):
        return laurent_to_json(value)
    if isinstance(value, VirtualBundle):
        return bundle_to_json(value)
    if isinstance(value, RealFourManifold):
        return manifold_to_json(value)
    if isinstance(value, RealSpinC):
        return spinc_to_json(value)
    if isinstance(value, Violation):
        return {"rule": value.rule, "locus": value.locus, "message": value.message}
    if isinstance(value, Chamber):
        return value.value
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): value_to_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [value_to_json(v) for v in value]
    return value


def outcome_to_json(outcome) -> dict:
    return {
        "rule": outcome.rule,
        "assignments": {k: value_to_json(v) for k, v in outcome.assignments.items()},
        "violations": [value_to_json(v) for v in outcome.violations],
        "relations": list(outcome.relations),
        "notes": list(outcome.notes),
    }


def dumps(doc: Any) -> str:
    return json.dumps(value_to_json(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load(path) -> RealFourManifold:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise InputError("/", f"{p}: not valid UTF-8 ({exc.reason})") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("/", f"{p}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return manifold_from_json(doc)


def save(obj: Any, path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")
