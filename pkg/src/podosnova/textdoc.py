"""Human-editable JSON model documents (`.podo.json`).

Canonical form: UTF-8, sorted keys, two-space indent, trailing newline.
`load_text(save_text(m)) == m` for every valid model.
"""

from __future__ import annotations

import json
from typing import Any

from .entities import (
    Anchor,
    AxisGroup,
    Beam,
    ColumnGroup,
    ColumnRef,
    FootingGroup,
    FootingRef,
    FoundationBeam,
    LintelSpec,
    Model,
    ModelSettings,
    Opening,
    OpeningSectionExtra,
    Orientation,
    Partition,
    PartitionType,
    PlanKind,
    Seat,
    SlabGroup,
    StripFoundation,
    TextNote,
    TransomSpec,
)
from .errors import IntegrityError, SchemaError
from .validate import check_model

FORMAT_NAME = "podo-model"
FORMAT_VERSION = 1


# ------------------------------------------------------------------ encoding

def _anchor_doc(anchor: Anchor) -> dict:
    return {
        "h_axis": anchor.h_axis,
        "v_axis": anchor.v_axis,
        "dx_mm": anchor.dx_mm,
        "dy_mm": anchor.dy_mm,
    }


def _axis_group_doc(group: AxisGroup) -> dict:
    doc: dict[str, Any] = {
        "id": group.id,
        "count": group.count,
        "label_start": group.label_start,
    }
    if group.is_main:
        doc["step_mm"] = group.step_mm
    else:
        doc["base_axis"] = group.base_axis
        doc["offset_mm"] = group.offset_mm
    return doc


def _column_group_doc(g: ColumnGroup) -> dict:
    return {
        "id": g.id,
        "mark": g.mark,
        "unmarked_type": g.unmarked_type,
        "console_len_mm": g.console_len_mm,
        "console_left": g.console_left,
        "start": _anchor_doc(g.start),
        "end": _anchor_doc(g.end),
        "center_dx_mm": g.center_dx_mm,
        "center_dy_mm": g.center_dy_mm,
        "width_mm": g.width_mm,
        "thickness_mm": g.thickness_mm,
        "along_x": g.along_x,
        "is_new": g.is_new,
    }


def _partition_doc(p: Partition) -> dict:
    return {
        "id": p.id,
        "chain_id": p.chain_id,
        "gost_type": p.gost_type.value,
        "thickness_mm": p.thickness_mm,
        "length_mm": p.length_mm,
        "anchor": _anchor_doc(p.anchor),
        "bearing": p.bearing,
        "along_x": p.along_x,
        "is_new": p.is_new,
    }


def _opening_doc(o: Opening) -> dict:
    doc = {
        "id": o.id,
        "partition": o.partition_id,
        "gost_type": o.gost_type,
        "mark": o.mark,
        "width_mm": o.width_mm,
        "height_mm": o.height_mm,
        "anchor_offset_mm": o.anchor_offset_mm,
        "along_x": o.along_x,
        "rot180": o.rot180,
        "is_new": o.is_new,
        "section_extra": None,
    }
    if o.section_extra is not None:
        e = o.section_extra
        doc["section_extra"] = {
            "sill_height_mm": e.sill_height_mm,
            "opening_height_mm": e.opening_height_mm,
            "lintel": None
            if e.lintel is None
            else {
                "mark": e.lintel.mark,
                "length_mm": e.lintel.length_mm,
                "width_mm": e.lintel.width_mm,
                "height_mm": e.lintel.height_mm,
            },
            "transom": None
            if e.transom is None
            else {
                "mark": e.transom.mark,
                "thickness_mm": e.transom.thickness_mm,
                "width_mm": e.transom.width_mm,
                "height_mm": e.transom.height_mm,
            },
        }
    return doc


def _beam_doc(b: Beam) -> dict:
    return {
        "id": b.id,
        "mark": b.mark,
        "length_mm": b.length_mm,
        "width_mm": b.width_mm,
        "height_mm": b.height_mm,
        "anchor": _anchor_doc(b.anchor),
        "end_a": {"group": b.end_a.group_id, "ix": b.end_a.ix, "iy": b.end_a.iy},
        "end_b": {"group": b.end_b.group_id, "ix": b.end_b.ix, "iy": b.end_b.iy},
        "along_x": b.along_x,
        "is_new": b.is_new,
    }


def _slab_group_doc(g: SlabGroup) -> dict:
    return {
        "id": g.id,
        "mark": g.mark,
        "length_mm": g.length_mm,
        "width_mm": g.width_mm,
        "height_mm": g.height_mm,
        "anchor": _anchor_doc(g.anchor),
        "count": g.count,
        "along_x": g.along_x,
        "is_new": g.is_new,
    }


def _strip_doc(s: StripFoundation) -> dict:
    return {
        "id": s.id,
        "chain_id": s.chain_id,
        "width_mm": s.width_mm,
        "length_mm": s.length_mm,
        "anchor": _anchor_doc(s.anchor),
        "along_x": s.along_x,
        "is_new": s.is_new,
    }


def _footing_group_doc(g: FootingGroup) -> dict:
    return {
        "id": g.id,
        "mark": g.mark,
        "length_mm": g.length_mm,
        "width_mm": g.width_mm,
        "height_mm": g.height_mm,
        "start": _anchor_doc(g.start),
        "end": _anchor_doc(g.end),
        "center_dx_mm": g.center_dx_mm,
        "center_dy_mm": g.center_dy_mm,
        "along_x": g.along_x,
        "is_new": g.is_new,
    }


def _foundation_beam_doc(b: FoundationBeam) -> dict:
    return {
        "id": b.id,
        "mark": b.mark,
        "length_mm": b.length_mm,
        "width_mm": b.width_mm,
        "height_mm": b.height_mm,
        "anchor": _anchor_doc(b.anchor),
        "end_a": {"group": b.end_a.group_id, "ix": b.end_a.ix, "iy": b.end_a.iy},
        "seat_a": b.seat_a.value,
        "end_b": {"group": b.end_b.group_id, "ix": b.end_b.ix, "iy": b.end_b.iy},
        "along_x": b.along_x,
        "is_new": b.is_new,
    }


def _text_doc(t: TextNote) -> dict:
    return {
        "id": t.id,
        "lines": t.lines,
        "font_height_mm": t.font_height_mm,
        "line_step_mm": t.line_step_mm,
        "origin": list(t.origin),
        "leader_target": list(t.leader_target),
    }


def model_to_doc(model: Model) -> dict:
    s = model.settings
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "kind": model.kind.value,
        "settings": {
            "axis_label_offset_mm": s.axis_label_offset_mm,
            "dim_offset_mm": s.dim_offset_mm,
            "horiz_axes_lettered": s.horiz_axes_lettered,
            "horiz_dims_above": s.horiz_dims_above,
            "gen_font_height_mm": s.gen_font_height_mm,
            "beam_span_tolerance_mm": s.beam_span_tolerance_mm,
            "letter_alphabet": s.letter_alphabet,
        },
        "axis_groups_h": [_axis_group_doc(g) for g in model.axis_groups_h],
        "axis_groups_v": [_axis_group_doc(g) for g in model.axis_groups_v],
        "column_groups": [_column_group_doc(g) for g in model.column_groups],
        "partitions": [_partition_doc(p) for p in model.partitions],
        "openings": [_opening_doc(o) for o in model.openings],
        "beams": [_beam_doc(b) for b in model.beams],
        "slab_groups": [_slab_group_doc(g) for g in model.slab_groups],
        "strip_foundations": [_strip_doc(s) for s in model.strip_foundations],
        "footing_groups": [_footing_group_doc(g) for g in model.footing_groups],
        "foundation_beams": [_foundation_beam_doc(b) for b in model.foundation_beams],
        "texts": [_text_doc(t) for t in model.texts],
        "next_id": model.next_id,
    }


def save_text(model: Model) -> str:
    return json.dumps(model_to_doc(model), ensure_ascii=False, indent=2, sort_keys=True) + "\n"


# ------------------------------------------------------------------ decoding

def _need(doc: dict, key: str, kind, path: str):
    if not isinstance(doc, dict):
        raise SchemaError("expected an object", path)
    if key not in doc:
        raise SchemaError(f"missing key {key!r}", path)
    value = doc[key]
    if kind is int and isinstance(value, bool):
        raise SchemaError(f"{key} must be an integer", path)
    if not isinstance(value, kind):
        raise SchemaError(f"{key} has wrong type {type(value).__name__}", path)
    return value


def _opt(doc: dict, key: str, kind, path: str):
    value = doc.get(key)
    if value is None:
        return None
    if not isinstance(value, kind):
        raise SchemaError(f"{key} has wrong type {type(value).__name__}", path)
    return value


def _anchor_from(doc: dict, path: str) -> Anchor:
    return Anchor(
        h_axis=_need(doc, "h_axis", int, path),
        v_axis=_need(doc, "v_axis", int, path),
        dx_mm=_need(doc, "dx_mm", int, path),
        dy_mm=_need(doc, "dy_mm", int, path),
    )


def _axis_group_from(doc: dict, orientation: Orientation, path: str) -> AxisGroup:
    return AxisGroup(
        id=_need(doc, "id", int, path),
        orientation=orientation,
        count=_need(doc, "count", int, path),
        label_start=_need(doc, "label_start", str, path),
        step_mm=_opt(doc, "step_mm", int, path),
        base_axis=_opt(doc, "base_axis", int, path),
        offset_mm=_opt(doc, "offset_mm", int, path),
    )


def _ref_from(doc: dict, cls, path: str):
    return cls(
        group_id=_need(doc, "group", int, path),
        ix=_need(doc, "ix", int, path),
        iy=_need(doc, "iy", int, path),
    )


def _enum_from(doc: dict, key: str, enum_cls, path: str):
    raw = _need(doc, key, str, path)
    try:
        return enum_cls(raw)
    except ValueError:
        raise SchemaError(f"unknown {key} {raw!r}", path)


def _point_from(doc: dict, key: str, path: str) -> tuple[int, int]:
    raw = _need(doc, key, list, path)
    if len(raw) != 2 or not all(isinstance(v, int) for v in raw):
        raise SchemaError(f"{key} must be [x, y] integers", path)
    return (raw[0], raw[1])


def doc_to_model(doc: dict) -> Model:
    if not isinstance(doc, dict):
        raise SchemaError("document must be an object", "$")
    if doc.get("format") != FORMAT_NAME:
        raise SchemaError(f"unknown format {doc.get('format')!r}", "$.format")
    if doc.get("version") != FORMAT_VERSION:
        raise SchemaError(f"unsupported version {doc.get('version')!r}", "$.version")
    kind_raw = _need(doc, "kind", str, "$")
    try:
        kind = PlanKind(kind_raw)
    except ValueError:
        raise SchemaError(f"unknown plan kind {kind_raw!r}", "$.kind")

    s = _need(doc, "settings", dict, "$")
    settings = ModelSettings(
        axis_label_offset_mm=_need(s, "axis_label_offset_mm", int, "$.settings"),
        dim_offset_mm=_need(s, "dim_offset_mm", int, "$.settings"),
        horiz_axes_lettered=_need(s, "horiz_axes_lettered", bool, "$.settings"),
        horiz_dims_above=_need(s, "horiz_dims_above", bool, "$.settings"),
        gen_font_height_mm=_need(s, "gen_font_height_mm", int, "$.settings"),
        beam_span_tolerance_mm=_need(s, "beam_span_tolerance_mm", int, "$.settings"),
        letter_alphabet=_need(s, "letter_alphabet", str, "$.settings"),
    )

    model = Model(kind=kind, settings=settings)

    for i, g in enumerate(_need(doc, "axis_groups_h", list, "$")):
        model.axis_groups_h.append(
            _axis_group_from(g, Orientation.H, f"$.axis_groups_h[{i}]")
        )
    for i, g in enumerate(_need(doc, "axis_groups_v", list, "$")):
        model.axis_groups_v.append(
            _axis_group_from(g, Orientation.V, f"$.axis_groups_v[{i}]")
        )

    for i, g in enumerate(_need(doc, "column_groups", list, "$")):
        path = f"$.column_groups[{i}]"
        model.column_groups.append(
            ColumnGroup(
                id=_need(g, "id", int, path),
                start=_anchor_from(_need(g, "start", dict, path), path),
                end=_anchor_from(_need(g, "end", dict, path), path),
                mark=_opt(g, "mark", str, path),
                unmarked_type=_opt(g, "unmarked_type", str, path),
                console_len_mm=_opt(g, "console_len_mm", int, path),
                console_left=_need(g, "console_left", bool, path),
                center_dx_mm=_need(g, "center_dx_mm", int, path),
                center_dy_mm=_need(g, "center_dy_mm", int, path),
                width_mm=_need(g, "width_mm", int, path),
                thickness_mm=_need(g, "thickness_mm", int, path),
                along_x=_need(g, "along_x", bool, path),
                is_new=_need(g, "is_new", bool, path),
            )
        )

    for i, p in enumerate(_need(doc, "partitions", list, "$")):
        path = f"$.partitions[{i}]"
        model.partitions.append(
            Partition(
                id=_need(p, "id", int, path),
                chain_id=_need(p, "chain_id", int, path),
                gost_type=_enum_from(p, "gost_type", PartitionType, path),
                thickness_mm=_need(p, "thickness_mm", int, path),
                length_mm=_need(p, "length_mm", int, path),
                anchor=_anchor_from(_need(p, "anchor", dict, path), path),
                bearing=_need(p, "bearing", bool, path),
                along_x=_need(p, "along_x", bool, path),
                is_new=_need(p, "is_new", bool, path),
            )
        )

    for i, o in enumerate(_need(doc, "openings", list, "$")):
        path = f"$.openings[{i}]"
        extra_doc = _opt(o, "section_extra", dict, path)
        extra = None
        if extra_doc is not None:
            lintel_doc = _opt(extra_doc, "lintel", dict, path)
            transom_doc = _opt(extra_doc, "transom", dict, path)
            extra = OpeningSectionExtra(
                sill_height_mm=_need(extra_doc, "sill_height_mm", int, path),
                opening_height_mm=_need(extra_doc, "opening_height_mm", int, path),
                lintel=None
                if lintel_doc is None
                else LintelSpec(
                    mark=_opt(lintel_doc, "mark", str, path),
                    length_mm=_need(lintel_doc, "length_mm", int, path),
                    width_mm=_need(lintel_doc, "width_mm", int, path),
                    height_mm=_need(lintel_doc, "height_mm", int, path),
                ),
                transom=None
                if transom_doc is None
                else TransomSpec(
                    mark=_opt(transom_doc, "mark", str, path),
                    thickness_mm=_need(transom_doc, "thickness_mm", int, path),
                    width_mm=_need(transom_doc, "width_mm", int, path),
                    height_mm=_need(transom_doc, "height_mm", int, path),
                ),
            )
        model.openings.append(
            Opening(
                id=_need(o, "id", int, path),
                partition_id=_need(o, "partition", int, path),
                gost_type=_need(o, "gost_type", int, path),
                width_mm=_need(o, "width_mm", int, path),
                height_mm=_need(o, "height_mm", int, path),
                anchor_offset_mm=_need(o, "anchor_offset_mm", int, path),
                mark=_opt(o, "mark", str, path),
                along_x=_need(o, "along_x", bool, path),
                rot180=_need(o, "rot180", bool, path),
                is_new=_need(o, "is_new", bool, path),
                section_extra=extra,
            )
        )

    for i, b in enumerate(_need(doc, "beams", list, "$")):
        path = f"$.beams[{i}]"
        model.beams.append(
            Beam(
                id=_need(b, "id", int, path),
                length_mm=_need(b, "length_mm", int, path),
                width_mm=_need(b, "width_mm", int, path),
                height_mm=_need(b, "height_mm", int, path),
                anchor=_anchor_from(_need(b, "anchor", dict, path), path),
                end_a=_ref_from(_need(b, "end_a", dict, path), ColumnRef, path),
                end_b=_ref_from(_need(b, "end_b", dict, path), ColumnRef, path),
                mark=_opt(b, "mark", str, path),
                along_x=_need(b, "along_x", bool, path),
                is_new=_need(b, "is_new", bool, path),
            )
        )

    for i, g in enumerate(_need(doc, "slab_groups", list, "$")):
        path = f"$.slab_groups[{i}]"
        model.slab_groups.append(
            SlabGroup(
                id=_need(g, "id", int, path),
                length_mm=_need(g, "length_mm", int, path),
                width_mm=_need(g, "width_mm", int, path),
                height_mm=_need(g, "height_mm", int, path),
                anchor=_anchor_from(_need(g, "anchor", dict, path), path),
                count=_need(g, "count", int, path),
                mark=_opt(g, "mark", str, path),
                along_x=_need(g, "along_x", bool, path),
                is_new=_need(g, "is_new", bool, path),
            )
        )

    for i, s_doc in enumerate(_need(doc, "strip_foundations", list, "$")):
        path = f"$.strip_foundations[{i}]"
        model.strip_foundations.append(
            StripFoundation(
                id=_need(s_doc, "id", int, path),
                chain_id=_need(s_doc, "chain_id", int, path),
                width_mm=_need(s_doc, "width_mm", int, path),
                length_mm=_need(s_doc, "length_mm", int, path),
                anchor=_anchor_from(_need(s_doc, "anchor", dict, path), path),
                along_x=_need(s_doc, "along_x", bool, path),
                is_new=_need(s_doc, "is_new", bool, path),
            )
        )

    for i, g in enumerate(_need(doc, "footing_groups", list, "$")):
        path = f"$.footing_groups[{i}]"
        model.footing_groups.append(
            FootingGroup(
                id=_need(g, "id", int, path),
                start=_anchor_from(_need(g, "start", dict, path), path),
                end=_anchor_from(_need(g, "end", dict, path), path),
                length_mm=_need(g, "length_mm", int, path),
                width_mm=_need(g, "width_mm", int, path),
                height_mm=_need(g, "height_mm", int, path),
                mark=_opt(g, "mark", str, path),
                center_dx_mm=_need(g, "center_dx_mm", int, path),
                center_dy_mm=_need(g, "center_dy_mm", int, path),
                along_x=_need(g, "along_x", bool, path),
                is_new=_need(g, "is_new", bool, path),
            )
        )

    for i, b in enumerate(_need(doc, "foundation_beams", list, "$")):
        path = f"$.foundation_beams[{i}]"
        model.foundation_beams.append(
            FoundationBeam(
                id=_need(b, "id", int, path),
                length_mm=_need(b, "length_mm", int, path),
                width_mm=_need(b, "width_mm", int, path),
                height_mm=_need(b, "height_mm", int, path),
                anchor=_anchor_from(_need(b, "anchor", dict, path), path),
                end_a=_ref_from(_need(b, "end_a", dict, path), FootingRef, path),
                end_b=_ref_from(_need(b, "end_b", dict, path), FootingRef, path),
                seat_a=_enum_from(b, "seat_a", Seat, path),
                mark=_opt(b, "mark", str, path),
                along_x=_need(b, "along_x", bool, path),
                is_new=_need(b, "is_new", bool, path),
            )
        )

    for i, t in enumerate(_need(doc, "texts", list, "$")):
        path = f"$.texts[{i}]"
        model.texts.append(
            TextNote(
                id=_need(t, "id", int, path),
                lines=_need(t, "lines", str, path),
                origin=_point_from(t, "origin", path),
                leader_target=_point_from(t, "leader_target", path),
                font_height_mm=_need(t, "font_height_mm", int, path),
                line_step_mm=_need(t, "line_step_mm", int, path),
            )
        )

    model.next_id = _need(doc, "next_id", int, "$")
    return model


def load_text(text: str) -> Model:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}", "$")
    model = doc_to_model(doc)
    problems = check_model(model)
    if problems:
        raise IntegrityError("; ".join(problems))
    return model
