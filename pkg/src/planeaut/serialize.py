"""JSON forms of maps, actions and results, plus corpus files.

Polynomials travel as canonical text and are read back with the parser, so
every record is human readable.  Dict insertion order is the field order on
the wire; :func:`dumps` never sorts keys, which keeps output byte-stable.
"""

from __future__ import annotations

import json
from pathlib import Path

from .auto import AffineFactor, ElementaryFactor, PlaneMap, TameDecomposition
from .field import FieldSpec
from .gaction import CoAction
from .gen import GenConfig, corpus_actions, corpus_maps
from .parse import parse_poly2, parse_polyT


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def map_to_json(phi: PlaneMap) -> dict:
    return {"field": phi.spec.designator(), "f1": str(phi.f1), "f2": str(phi.f2)}


def map_from_json(data: dict, spec: FieldSpec = None) -> PlaneMap:
    spec = spec or FieldSpec.parse(data["field"])
    return PlaneMap(parse_poly2(data["f1"], spec), parse_poly2(data["f2"], spec))


def action_to_json(sigma: CoAction) -> dict:
    return {"field": sigma.spec.designator(), "s1": str(sigma.s1), "s2": str(sigma.s2)}


def action_from_json(data: dict, spec: FieldSpec = None) -> CoAction:
    """Unvalidated co-action; pass it through ``validate`` before use."""
    spec = spec or FieldSpec.parse(data["field"])
    return CoAction(parse_polyT(data["s1"], spec), parse_polyT(data["s2"], spec))


def factor_from_json(data: dict, spec: FieldSpec):
    if data["kind"] == "elem":
        return ElementaryFactor(int(data["target"]), parse_poly2(data["addend"], spec))
    if data["kind"] == "affine":
        matrix = tuple(tuple(spec(v) for v in row) for row in data["matrix"])
        return AffineFactor(matrix, tuple(spec(v) for v in data["translation"]))
    raise ValueError(f"unknown factor kind {data['kind']!r}")


def decomposition_from_json(data: dict) -> TameDecomposition:
    spec = FieldSpec.parse(data["field"])
    return TameDecomposition(spec, tuple(factor_from_json(f, spec) for f in data["factors"]))


# -- corpus files --------------------------------------------------------------

CORPUS_KINDS = ("PlaneMap", "CoAction")


def corpus_records(cfg: GenConfig, n: int, kind: str) -> list:
    """One record per item, each carrying the derived GenConfig that produced it."""
    if kind == "PlaneMap":
        items = [map_to_json(m) for m in corpus_maps(cfg, n)]
    elif kind == "CoAction":
        items = [action_to_json(a) for a in corpus_actions(cfg, n)]
    else:
        raise ValueError(f"corpus kind must be one of {CORPUS_KINDS}")
    return [
        {"kind": kind, "index": i, "config": cfg.derive(i).to_json(), "value": item}
        for i, item in enumerate(items)
    ]


def save_corpus(path, records: list) -> None:
    Path(path).write_text(dumps(records), encoding="utf-8")


def load_corpus(path) -> list:
    """Records with ``value`` decoded into PlaneMap / CoAction objects."""
    out = []
    for rec in json.loads(Path(path).read_text(encoding="utf-8")):
        decode = map_from_json if rec["kind"] == "PlaneMap" else action_from_json
        out.append({**rec, "value": decode(rec["value"])})
    return out
