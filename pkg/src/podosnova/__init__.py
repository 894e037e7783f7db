"""Parametric drafting kernel for structural base (podosnova) plans."""

from .entities import (
    Anchor,
    AxisGroup,
    Model,
    ModelSettings,
    Orientation,
    PartitionType,
    PlanKind,
)
from .axes import node_position, resolve_axes
from .catalog import (
    Catalog,
    MarkFamily,
    MarkRecord,
    UNMARKED,
    default_catalog,
    parse_mark_string,
    render_mark_string,
)
from .drafting import DisplayList, generate_plan_display
from .textdoc import load_text, save_text
from .capsule import decode_capsule, encode_capsule
from .svg import emit_svg
from .dxf import emit_dxf
from .validate import check_model, validate_model
from .reference import reference_floor_model

__all__ = [
    "Anchor",
    "AxisGroup",
    "Catalog",
    "DisplayList",
    "MarkFamily",
    "MarkRecord",
    "Model",
    "ModelSettings",
    "Orientation",
    "PartitionType",
    "PlanKind",
    "UNMARKED",
    "check_model",
    "decode_capsule",
    "default_catalog",
    "emit_dxf",
    "emit_svg",
    "encode_capsule",
    "generate_plan_display",
    "load_text",
    "node_position",
    "parse_mark_string",
    "reference_floor_model",
    "render_mark_string",
    "resolve_axes",
    "save_text",
    "validate_model",
]
