"""JSON form of display lists (service wire format).

Each primitive becomes a tagged object with millimeter coordinates, so
clients can render without knowing kernel internals.
"""

from __future__ import annotations

import json

from .drafting import (
    Arc,
    AxisBubble,
    Circle,
    DimLinear,
    DisplayList,
    Leader,
    Primitive,
    Segment,
    Style,
    TextPrim,
)


def _style_doc(style: Style) -> dict:
    return {"weight": style.weight.value, "pattern": style.pattern.value}


def primitive_to_doc(prim: Primitive) -> dict:
    if isinstance(prim, Segment):
        return {
            "type": "segment",
            "p1": list(prim.p1),
            "p2": list(prim.p2),
            "style": _style_doc(prim.style),
        }
    if isinstance(prim, Circle):
        return {
            "type": "circle",
            "center": list(prim.center),
            "r": prim.r,
            "style": _style_doc(prim.style),
        }
    if isinstance(prim, Arc):
        return {
            "type": "arc",
            "center": list(prim.center),
            "r": prim.r,
            "a0_deg": prim.a0_deg,
            "a1_deg": prim.a1_deg,
            "style": _style_doc(prim.style),
        }
    if isinstance(prim, TextPrim):
        return {
            "type": "text",
            "origin": list(prim.origin),
            "height_mm": prim.height_mm,
            "content": prim.content,
        }
    if isinstance(prim, DimLinear):
        return {
            "type": "dim_linear",
            "p1": list(prim.p1),
            "p2": list(prim.p2),
            "offset_mm": prim.offset_mm,
            "text": prim.text,
            "side": prim.side,
        }
    if isinstance(prim, AxisBubble):
        return {
            "type": "axis_bubble",
            "center": list(prim.center),
            "r": prim.r,
            "label": prim.label,
        }
    if isinstance(prim, Leader):
        return {
            "type": "leader",
            "points": [list(p) for p in prim.points],
            "text": prim.text,
        }
    raise TypeError(f"unknown primitive {type(prim).__name__}")


def display_to_doc(dl: DisplayList) -> dict:
    bbox = dl.bounding_box()
    return {
        "primitives": [primitive_to_doc(p) for p in dl.primitives],
        "bbox": list(bbox),
    }


def display_to_json(dl: DisplayList) -> str:
    return json.dumps(display_to_doc(dl), ensure_ascii=False, sort_keys=True)
