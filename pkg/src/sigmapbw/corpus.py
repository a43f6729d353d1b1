"""Corpus files: JSON schema, reference resolution and object construction."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from .endo import MapFamily, RingMap, build_map, builtin, identity_map
from .finring import DEFAULT_RING_CAP, FiniteRing, RingError, build_ring
from .pbw.extension import Extension, SkewPBWData, build_extension
from .spectop import FiniteTopology, synthetic_space

_ELEMENT = {"oneOf": [{"type": "integer", "minimum": 0}, {"type": "string"}]}
_MAP = {
    "oneOf": [
        {"type": "string"},
        {"type": "object",
         "properties": {"name": {"type": "string"}, "ring": {"type": "string"},
                        "builtin": {"type": "string"},
                        "images": {"type": "array", "items": _ELEMENT}},
         "oneOf": [{"required": ["builtin"]}, {"required": ["images"]}],
         "additionalProperties": False},
    ]
}
_MAPS = {"type": "array", "items": _MAP, "minItems": 1}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "rings": {"type": "array", "items": {
            "type": "object",
            "required": ["name", "kind"],
            "properties": {
                "name": {"type": "string"},
                "kind": {"enum": ["zn", "gf", "ut2_equal_diag", "ut2", "trunc_st", "trunc_t2",
                                  "product", "raw"]},
            },
        }},
        "families": {"type": "array", "items": {
            "type": "object",
            "required": ["name", "ring", "sigma"],
            "properties": {
                "name": {"type": "string"},
                "ring": {"type": "string"},
                "sigma": _MAPS,
                "delta": {"oneOf": [{"type": "null"}, _MAPS]},
            },
            "additionalProperties": False,
        }},
        "extensions": {"type": "array", "items": {
            "type": "object",
            "required": ["name", "ring", "sigma"],
            "properties": {
                "name": {"type": "string"},
                "ring": {"type": "string"},
                "sigma": _MAPS,
                "delta": {"oneOf": [{"type": "null"}, _MAPS]},
                "d": {"type": "array", "items": {
                    "type": "array", "prefixItems": [{"type": "integer", "minimum": 1},
                                                     {"type": "integer", "minimum": 1}, _ELEMENT],
                    "minItems": 3, "maxItems": 3}},
                "r": {"type": "array", "items": {
                    "type": "array", "prefixItems": [{"type": "integer", "minimum": 1},
                                                     {"type": "integer", "minimum": 1},
                                                     {"type": "array", "items": _ELEMENT}],
                    "minItems": 3, "maxItems": 3}},
                "degree_cap": {"type": "integer", "minimum": 1, "maximum": 12},
            },
            "additionalProperties": False,
        }},
        "spaces": {"type": "array", "items": {
            "type": "object",
            "required": ["name", "nodes", "covers", "max"],
            "properties": {
                "name": {"type": "string"},
                "nodes": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                "covers": {"type": "array", "items": {
                    "type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2}},
                "max": {"type": "array", "items": {"type": "string"}},
                "sspec": {"type": "array", "items": {"type": "string"}},
                "jspec": {"type": "array", "items": {"type": "string"}},
            },
            "additionalProperties": False,
        }},
        "config": {"type": "object", "properties": {
            "seed": {"type": "integer"},
            "ring_cap": {"type": "integer", "minimum": 1},
            "probe_degree": {"type": "integer", "minimum": 0},
            "probe_support": {"type": "integer", "minimum": 1},
            "probe_budget": {"type": "integer", "minimum": 1},
            "exhaustive_limit": {"type": "integer", "minimum": 0},
            "sample_count": {"type": "integer", "minimum": 1},
        }, "additionalProperties": False},
    },
    "additionalProperties": False,
}


class CorpusError(ValueError):
    def __init__(self, problems: list[str]):
        self.problems = problems
        super().__init__("; ".join(problems))


def _pointer(path) -> str:
    return "/" + "/".join(str(p) for p in path)


def validate_document(doc: dict) -> None:
    v = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(v.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        raise CorpusError([f"{_pointer(e.absolute_path)}: {e.message}" for e in errors])


def load_document(path: str | Path | None) -> dict:
    if path is None:
        text = resources.files("sigmapbw").joinpath("data/default_corpus.json").read_text()
    else:
        text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise CorpusError([f"/: invalid JSON ({e.msg} at line {e.lineno})"]) from e
    validate_document(doc)
    return doc


# -- construction --------------------------------------------------------------------------


def resolve_map(R: FiniteRing, spec, role: str, paired: RingMap | None = None) -> RingMap:
    if isinstance(spec, str):
        spec = {"builtin": spec}
    if "builtin" in spec:
        name = spec["builtin"]
        if role == "derivation" and name in ("identity", "id"):
            raise RingError("identity is not a derivation")
        m = builtin(R, name, paired_sigma=paired)
        if role == "derivation" and m.role != "derivation":
            raise RingError(f"{name} is not a derivation")
        if role == "endomorphism" and m.role != "endomorphism":
            raise RingError(f"{name} is not an endomorphism")
        if spec.get("name"):
            m.name = spec["name"]
        return m
    images = [R.element(x) for x in spec["images"]]
    return build_map(R, images, role, paired if role == "derivation" else None,
                     spec.get("name", "map"))


def _maps(R: FiniteRing, sigmas, deltas):
    S = [resolve_map(R, s, "endomorphism") for s in sigmas]
    if deltas is None:
        return S, None
    if len(deltas) != len(S):
        raise RingError("need one delta per sigma")
    return S, [resolve_map(R, d, "derivation", s) for d, s in zip(deltas, S)]


@dataclass
class Corpus:
    doc: dict
    ring_cap: int = DEFAULT_RING_CAP
    _rings: dict = field(default_factory=dict)

    @property
    def config(self) -> dict:
        return self.doc.get("config", {})

    def ring_specs(self) -> list[dict]:
        return self.doc.get("rings", [])

    def ring(self, name: str) -> FiniteRing:
        if name not in self._rings:
            spec = next((r for r in self.ring_specs() if r["name"] == name), None)
            if spec is None:
                raise RingError(f"unknown ring {name!r}")
            self._rings[name] = build_ring(spec, cap=self.ring_cap)
        return self._rings[name]

    def family(self, index: int) -> tuple[str, FiniteRing, MapFamily]:
        spec = self.doc["families"][index]
        R = self.ring(spec["ring"])
        S, D = _maps(R, spec["sigma"], spec.get("delta"))
        return spec["name"], R, MapFamily(R, S, D, spec["name"])

    def extension(self, index: int) -> Extension:
        spec = self.doc["extensions"][index]
        R = self.ring(spec["ring"])
        S, D = _maps(R, spec["sigma"], spec.get("delta"))
        d = {}
        for i, j, v in spec.get("d", []):
            d[(i - 1, j - 1)] = R.element(v)
        r = {}
        for i, j, vec in spec.get("r", []):
            r[(i - 1, j - 1)] = [R.element(v) for v in vec]
        data = SkewPBWData(R, S, D, d, r, spec.get("degree_cap", 6), spec["name"])
        return build_extension(data)

    def space(self, index: int) -> FiniteTopology:
        s = self.doc["spaces"][index]
        return synthetic_space(s["name"], s["nodes"], s["covers"], s["max"],
                               s.get("sspec"), s.get("jspec"))

    def references(self) -> list[str]:
        """Dangling names, duplicate names and families that fail to build."""
        out = []
        names = [r["name"] for r in self.ring_specs()]
        for kind in ("rings", "families", "extensions", "spaces"):
            seen = set()
            for k, item in enumerate(self.doc.get(kind, [])):
                if item["name"] in seen:
                    out.append(f"/{kind}/{k}/name: duplicate name {item['name']!r}")
                seen.add(item["name"])
        for kind in ("families", "extensions"):
            for k, item in enumerate(self.doc.get(kind, [])):
                if item["ring"] not in names:
                    out.append(f"/{kind}/{k}/ring: unknown ring {item['ring']!r}")
        return out

    def family_less_rings(self) -> list[str]:
        used = {f["ring"] for f in self.doc.get("families", [])}
        return [r["name"] for r in self.ring_specs() if r["name"] not in used]


def load_corpus(path: str | Path | None = None, ring_cap: int = DEFAULT_RING_CAP) -> Corpus:
    doc = load_document(path)
    c = Corpus(doc, ring_cap)
    problems = c.references()
    if problems:
        raise CorpusError(problems)
    return c


def default_identity_family(R: FiniteRing) -> MapFamily:
    return MapFamily(R, [identity_map(R)], None, "id")
