"""Section documents: a JSON file naming the plans, levels and secant.

Plan references are file paths (text documents or capsules) resolved
relative to the section document itself.
"""

from __future__ import annotations

import json
from pathlib import Path

from .capsule import decode_capsule
from .derive import (
    FloorRef,
    FoundationRef,
    RoofRef,
    Secant,
    SectionSpec,
    ViewDirection,
)
from .entities import Model
from .errors import SchemaError
from .textdoc import load_text

FORMAT_NAME = "podo-section"
FORMAT_VERSION = 1


def section_spec_from_doc(doc: dict) -> SectionSpec:
    if not isinstance(doc, dict):
        raise SchemaError("document must be an object", "$")
    if doc.get("format") != FORMAT_NAME:
        raise SchemaError(f"unknown format {doc.get('format')!r}", "$.format")
    if doc.get("version") != FORMAT_VERSION:
        raise SchemaError(f"unsupported version {doc.get('version')!r}", "$.version")

    floors_doc = doc.get("floors")
    if not isinstance(floors_doc, list) or not floors_doc:
        raise SchemaError("floors must be a non-empty list", "$.floors")
    floors = []
    for i, f in enumerate(floors_doc):
        if not isinstance(f, dict) or "plan" not in f or "level_mm" not in f:
            raise SchemaError("floor needs plan and level_mm", f"$.floors[{i}]")
        floors.append(FloorRef(plan=str(f["plan"]), floor_level_mm=int(f["level_mm"])))

    foundation = None
    if doc.get("foundation"):
        f = doc["foundation"]
        foundation = FoundationRef(
            plan=str(f["plan"]), sole_level_mm=int(f["sole_level_mm"])
        )
    roof = None
    if doc.get("roof"):
        r = doc["roof"]
        roof = RoofRef(plan=str(r["plan"]), underside_level_mm=int(r["underside_level_mm"]))

    secant_doc = doc.get("secant")
    if not isinstance(secant_doc, dict) or "vertices" not in secant_doc:
        raise SchemaError("secant.vertices required", "$.secant")
    vertices = tuple(
        (int(v[0]), int(v[1])) for v in secant_doc["vertices"]
    )
    view = ViewDirection(secant_doc.get("view_direction", "left"))

    return SectionSpec(
        floors=tuple(floors),
        secant=Secant(vertices=vertices, view_direction=view),
        letter=str(doc.get("letter", "1")),
        scale=int(doc.get("scale", 100)),
        foundation=foundation,
        roof=roof,
    )


def load_plan_file(path: Path) -> Model:
    if path.suffix == ".podo":
        model, _stub = decode_capsule(path.read_bytes())
        return model
    return load_text(path.read_text(encoding="utf-8"))


def load_section_document(path: str | Path) -> tuple[SectionSpec, dict[str, Model]]:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}", "$")
    spec = section_spec_from_doc(doc)
    models: dict[str, Model] = {}
    refs = [f.plan for f in spec.floors]
    if spec.foundation:
        refs.append(spec.foundation.plan)
    if spec.roof:
        refs.append(spec.roof.plan)
    for ref in refs:
        if ref not in models:
            models[ref] = load_plan_file(path.parent / ref)
    return spec, models
