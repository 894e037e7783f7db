"""Display list generation: the only geometry artifact of the kernel.

A DisplayList is an ordered list of primitives in world millimeters.
Generation is pure and deterministic: layering order is fixed (axes,
dimensions, columns, partitions, openings, beams/slabs/foundations,
texts) and within a class entities are taken in ascending id order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from . import geometry
from .axes import anchor_position, main_axes, resolve_axes
from .entities import (
    Model,
    Opening,
    Orientation,
    Partition,
    PartitionType,
    Seat,
)
from .errors import TooFewAxes, UnknownEntity

Point = tuple[float, float]


class Weight(str, Enum):
    THIN = "thin"
    THICK = "thick"


class Pattern(str, Enum):
    SOLID = "solid"
    DASHED = "dashed"
    AXIS_DASH_DOT = "axis_dash_dot"


@dataclass(frozen=True)
class Style:
    weight: Weight = Weight.THIN
    pattern: Pattern = Pattern.SOLID


THIN = Style(Weight.THIN, Pattern.SOLID)
THICK = Style(Weight.THICK, Pattern.SOLID)
THIN_DASHED = Style(Weight.THIN, Pattern.DASHED)
THICK_DASHED = Style(Weight.THICK, Pattern.DASHED)
AXIS_STYLE = Style(Weight.THIN, Pattern.AXIS_DASH_DOT)


def entity_style(is_new: bool, pattern: Pattern = Pattern.SOLID) -> Style:
    return Style(Weight.THICK if is_new else Weight.THIN, pattern)


@dataclass(frozen=True)
class Segment:
    p1: Point
    p2: Point
    style: Style = THIN


@dataclass(frozen=True)
class Circle:
    center: Point
    r: float
    style: Style = THIN


@dataclass(frozen=True)
class Arc:
    center: Point
    r: float
    a0_deg: float
    a1_deg: float
    style: Style = THIN


@dataclass(frozen=True)
class TextPrim:
    origin: Point
    height_mm: float
    content: str


@dataclass(frozen=True)
class DimLinear:
    """Linear dimension between two measured points; the dimension line
    runs offset_mm away on `side` (+1 = left of p1->p2, -1 = right)."""

    p1: Point
    p2: Point
    offset_mm: float
    text: str
    side: int = 1


@dataclass(frozen=True)
class AxisBubble:
    center: Point
    r: float
    label: str


@dataclass(frozen=True)
class Leader:
    points: tuple[Point, ...]
    text: str = ""


Primitive = Segment | Circle | Arc | TextPrim | DimLinear | AxisBubble | Leader


@dataclass
class DisplayList:
    primitives: list[Primitive] = field(default_factory=list)

    def extend(self, items) -> None:
        self.primitives.extend(items)

    def bounding_box(self) -> tuple[float, float, float, float]:
        xs: list[float] = []
        ys: list[float] = []
        for prim in self.primitives:
            for x, y in _prim_points(prim):
                xs.append(x)
                ys.append(y)
        if not xs:
            return (0.0, 0.0, 0.0, 0.0)
        return (min(xs), min(ys), max(xs), max(ys))


def _prim_points(prim: Primitive) -> list[Point]:
    if isinstance(prim, Segment):
        return [prim.p1, prim.p2]
    if isinstance(prim, (Circle, Arc)):
        cx, cy = prim.center
        return [(cx - prim.r, cy - prim.r), (cx + prim.r, cy + prim.r)]
    if isinstance(prim, TextPrim):
        return [prim.origin]
    if isinstance(prim, DimLinear):
        return [prim.p1, prim.p2] + list(_dim_line_points(prim))
    if isinstance(prim, AxisBubble):
        cx, cy = prim.center
        return [(cx - prim.r, cy - prim.r), (cx + prim.r, cy + prim.r)]
    if isinstance(prim, Leader):
        return list(prim.points)
    return []


def _dim_normal(dim: DimLinear) -> Point:
    dx = dim.p2[0] - dim.p1[0]
    dy = dim.p2[1] - dim.p1[1]
    length = math.hypot(dx, dy) or 1.0
    return (-dy / length * dim.side, dx / length * dim.side)


def _dim_line_points(dim: DimLinear) -> tuple[Point, Point]:
    nx, ny = _dim_normal(dim)
    off = dim.offset_mm
    return (
        (dim.p1[0] + nx * off, dim.p1[1] + ny * off),
        (dim.p2[0] + nx * off, dim.p2[1] + ny * off),
    )


def bubble_radius(model: Model) -> float:
    return 1.5 * model.settings.gen_font_height_mm


# ------------------------------------------------------------------- axes

def _grid_extent(model: Model, orientation: Orientation) -> tuple[int, int]:
    axes = resolve_axes(model, orientation)
    if not axes:
        return (0, 0)
    coords = [a.coordinate_mm for a in axes]
    return (min(coords), max(coords))


def generate_axis_display(model: Model) -> list[Primitive]:
    prims: list[Primitive] = []
    ext = model.settings.axis_label_offset_mm
    r = bubble_radius(model)
    v_lo, v_hi = _grid_extent(model, Orientation.V)
    h_lo, h_hi = _grid_extent(model, Orientation.H)

    for axis in resolve_axes(model, Orientation.H):
        y = axis.coordinate_mm
        prims.append(Segment((v_lo - ext, y), (v_hi + ext, y), AXIS_STYLE))
        prims.append(AxisBubble((v_lo - ext - r, y), r, axis.label))
    for axis in resolve_axes(model, Orientation.V):
        x = axis.coordinate_mm
        prims.append(Segment((x, h_lo - ext), (x, h_hi + ext), AXIS_STYLE))
        prims.append(AxisBubble((x, h_lo - ext - r), r, axis.label))
    return prims


# ------------------------------------------------------------- dimensions

def generate_span_dimensions(
    model: Model, orientation: Orientation, side: str | None = None
) -> list[DimLinear]:
    """One dimension per adjacent pair of main axes of `orientation`.

    For vertical axes the chain is horizontal (side "top"/"bottom",
    default from settings.horiz_dims_above); for horizontal axes it is
    vertical (side "left"/"right", default "left")."""
    axes = main_axes(model, orientation)
    if len(axes) < 2:
        raise TooFewAxes(
            f"need at least 2 main {orientation.value.upper()} axes, have {len(axes)}"
        )
    off = model.settings.dim_offset_mm + model.settings.axis_label_offset_mm
    dims: list[DimLinear] = []
    if orientation is Orientation.V:
        side = side or ("top" if model.settings.horiz_dims_above else "bottom")
        h_lo, h_hi = _grid_extent(model, Orientation.H)
        y = h_hi if side == "top" else h_lo
        sign = 1 if side == "top" else -1
        for a, b in zip(axes, axes[1:]):
            dims.append(
                DimLinear(
                    (a.coordinate_mm, y),
                    (b.coordinate_mm, y),
                    off,
                    str(b.coordinate_mm - a.coordinate_mm),
                    side=sign,
                )
            )
    else:
        side = side or "left"
        v_lo, v_hi = _grid_extent(model, Orientation.V)
        x = v_lo if side == "left" else v_hi
        sign = 1 if side == "left" else -1
        for a, b in zip(axes, axes[1:]):
            dims.append(
                DimLinear(
                    (x, a.coordinate_mm),
                    (x, b.coordinate_mm),
                    off,
                    str(b.coordinate_mm - a.coordinate_mm),
                    side=sign,
                )
            )
    return dims


def generate_overall_dimension(
    model: Model, orientation: Orientation, side: str | None = None
) -> DimLinear:
    axes = main_axes(model, orientation)
    if len(axes) < 2:
        raise TooFewAxes(
            f"need at least 2 main {orientation.value.upper()} axes, have {len(axes)}"
        )
    spans = generate_span_dimensions(model, orientation, side)
    first, last = axes[0], axes[-1]
    total = last.coordinate_mm - first.coordinate_mm
    base = spans[0]
    # Stack the overall dimension one tier beyond the span chain.
    return DimLinear(
        base.p1,
        spans[-1].p2,
        base.offset_mm + model.settings.dim_offset_mm,
        str(total),
        side=base.side,
    )


def _partition_parts(partition: Partition, openings: list[Opening]) -> list[tuple[int, int, bool]]:
    """(start, end, is_opening) runs covering [0, length]; zero-length
    runs are dropped."""
    spans = sorted(
        (geometry.opening_interval(o) for o in openings), key=lambda s: s[0]
    )
    parts: list[tuple[int, int, bool]] = []
    cursor = 0
    for lo, hi in spans:
        if lo > cursor:
            parts.append((cursor, lo, False))
        parts.append((lo, hi, True))
        cursor = hi
    if cursor < partition.length_mm:
        parts.append((cursor, partition.length_mm, False))
    return parts


def dimension_partition(model: Model, partition_id: int) -> list[DimLinear]:
    partition = model.partition_by_id(partition_id)
    if partition is None:
        raise UnknownEntity(f"partition {partition_id} not found")
    openings = [o for o in model.openings if o.partition_id == partition_id]
    openings.sort(key=lambda o: o.anchor_offset_mm)
    a, _ = geometry.base_line(model, partition)
    off = model.settings.dim_offset_mm
    dims: list[DimLinear] = []
    for lo, hi, _is_opening in _partition_parts(partition, openings):
        if partition.along_x:
            p1, p2 = (a[0] + lo, a[1]), (a[0] + hi, a[1])
        else:
            p1, p2 = (a[0], a[1] + lo), (a[0], a[1] + hi)
        dims.append(DimLinear(p1, p2, off, str(hi - lo), side=1))
    return dims


def dimension_slab_group(model: Model, group_id: int) -> list[DimLinear]:
    found = model.find_entity(group_id)
    if found is None or found[0] != "slab_groups":
        raise UnknownEntity(f"slab group {group_id} not found")
    group = found[1]
    x0, y0 = anchor_position(model, group.anchor)
    off = model.settings.dim_offset_mm
    dims: list[DimLinear] = []
    # Slabs stack across the along direction, one thickness dim per slab.
    for k in range(group.count):
        lo, hi = k * group.width_mm, (k + 1) * group.width_mm
        if group.along_x:
            p1, p2 = (x0, y0 + lo), (x0, y0 + hi)
        else:
            p1, p2 = (x0 + lo, y0), (x0 + hi, y0)
        dims.append(DimLinear(p1, p2, off, str(group.width_mm), side=1))
    return dims


# ----------------------------------------------------------- entity shapes

def _rect(prims: list[Primitive], x0, y0, x1, y1, style: Style) -> None:
    prims.append(Segment((x0, y0), (x1, y0), style))
    prims.append(Segment((x1, y0), (x1, y1), style))
    prims.append(Segment((x1, y1), (x0, y1), style))
    prims.append(Segment((x0, y1), (x0, y0), style))


PARTITION_LINE_COUNT = {
    PartitionType.ORDINARY: 2,
    PartitionType.PANEL_SHIELD: 2,
    PartitionType.GLASS_BLOCK: 2,
    PartitionType.GLAZED1: 3,  # three longitudinal lines
    PartitionType.GLAZED2: 4,  # four longitudinal lines
    PartitionType.BRICK: 2,
}

# GOST 21.107-78 opening variants, grouped by how the plan glyph renders.
# Only the door/window/folding glyphs explicitly distinguished here; the
# remaining variants render as plain breaks.
WINDOW_TYPES = frozenset({5, 6, 7, 8})
DOOR_TYPES = frozenset({9, 10, 11, 12, 13, 14, 15, 16})
FOLDING_TYPES = frozenset({17, 18})


def _column_group_display(model: Model, group) -> list[Primitive]:
    prims: list[Primitive] = []
    style = entity_style(group.is_new)
    xs, ys = geometry.group_index_ranges(group)
    if group.along_x:
        half_w, half_t = group.width_mm / 2, group.thickness_mm / 2
    else:
        half_w, half_t = group.thickness_mm / 2, group.width_mm / 2
    for iy in range(len(ys)):
        for ix in range(len(xs)):
            cx, cy = geometry.group_cell_position(model, group, ix, iy)
            _rect(prims, cx - half_w, cy - half_t, cx + half_w, cy + half_t, style)
    return prims


def _partition_display(model: Model, partition: Partition, openings) -> list[Primitive]:
    prims: list[Primitive] = []
    style = entity_style(partition.is_new)
    a, _ = geometry.base_line(model, partition)
    half = partition.thickness_mm / 2
    count = PARTITION_LINE_COUNT[partition.gost_type]
    laterals = [
        -half + i * partition.thickness_mm / (count - 1) for i in range(count)
    ]

    def pt(along: float, across: float) -> Point:
        if partition.along_x:
            return (a[0] + along, a[1] + across)
        return (a[0] + across, a[1] + along)

    parts = _partition_parts(partition, openings)
    for lo, hi, is_opening in parts:
        if is_opening:
            continue
        for lateral in laterals:
            prims.append(Segment(pt(lo, lateral), pt(hi, lateral), style))
        prims.append(Segment(pt(lo, -half), pt(lo, half), style))
        prims.append(Segment(pt(hi, -half), pt(hi, half), style))
    if not parts:
        for lateral in laterals:
            prims.append(
                Segment(pt(0, lateral), pt(partition.length_mm, lateral), style)
            )
    return prims


def _opening_display(model: Model, opening: Opening) -> list[Primitive]:
    partition = model.partition_by_id(opening.partition_id)
    if partition is None:
        return []
    prims: list[Primitive] = []
    style = entity_style(opening.is_new)
    a, _ = geometry.base_line(model, partition)
    half = partition.thickness_mm / 2
    lo, hi = geometry.opening_interval(opening)

    def pt(along: float, across: float) -> Point:
        if partition.along_x:
            return (a[0] + along, a[1] + across)
        return (a[0] + across, a[1] + along)

    # Jamb ticks at both ends of the break.
    prims.append(Segment(pt(lo, -half), pt(lo, half), style))
    prims.append(Segment(pt(hi, -half), pt(hi, half), style))

    # Side of the wall the glyph lives on: the opening's X flag relative
    # to its partition is the swing-side bit of the variant cycle.
    side = 1 if opening.along_x == partition.along_x else -1

    if opening.gost_type in WINDOW_TYPES:
        prims.append(Segment(pt(lo, 0), pt(hi, 0), style))
    elif opening.gost_type in DOOR_TYPES:
        hinge = lo if not opening.rot180 else hi
        leaf_dir = 1 if not opening.rot180 else -1
        leaf_end = pt(hinge + 0, side * (half + opening.width_mm))
        prims.append(Segment(pt(hinge, side * half), leaf_end, style))
        cx, cy = pt(hinge, side * half)
        a0 = 0.0 if partition.along_x else 90.0
        prims.append(
            Arc((cx, cy), opening.width_mm, a0, a0 + 90.0 * leaf_dir * side, style)
        )
    elif opening.gost_type in FOLDING_TYPES:
        # Folding door: zigzag across the break.
        quarter = (hi - lo) / 4
        zig = side * half
        points = [pt(lo, -zig), pt(lo + quarter, zig), pt(lo + 2 * quarter, -zig),
                  pt(lo + 3 * quarter, zig), pt(hi, -zig)]
        for p, q in zip(points, points[1:]):
            prims.append(Segment(p, q, style))
    return prims


def _beam_display(model: Model, beam, resolve_ref) -> list[Primitive]:
    prims: list[Primitive] = []
    style = entity_style(beam.is_new, Pattern.DASHED)
    pa = resolve_ref(model, beam.end_a)
    pb = resolve_ref(model, beam.end_b)
    (x0, y0), (x1, y1) = sorted((pa, pb))
    half = beam.width_mm / 2
    if beam.along_x:
        shift = _seat_shift(model, beam)
        _rect(prims, x0 + shift, y0 - half, x1 + shift, y1 + half, style)
    else:
        shift = _seat_shift(model, beam)
        _rect(prims, x0 - half, y0 + shift, x1 + half, y1 + shift, style)
    return prims


def _seat_shift(model: Model, beam) -> float:
    seat = getattr(beam, "seat_a", None)
    if seat in (None, Seat.CENTER):
        return 0.0
    group = model.footing_group_by_id(beam.end_a.group_id)
    if group is None:
        return 0.0
    extent = group.length_mm if beam.along_x else group.width_mm
    return -extent / 2 if seat is Seat.LEFT_EDGE else extent / 2


def _slab_group_display(model: Model, group) -> list[Primitive]:
    prims: list[Primitive] = []
    style = entity_style(group.is_new)
    x0, y0 = anchor_position(model, group.anchor)
    for k in range(group.count):
        if group.along_x:
            _rect(
                prims,
                x0,
                y0 + k * group.width_mm,
                x0 + group.length_mm,
                y0 + (k + 1) * group.width_mm,
                style,
            )
        else:
            _rect(
                prims,
                x0 + k * group.width_mm,
                y0,
                x0 + (k + 1) * group.width_mm,
                y0 + group.length_mm,
                style,
            )
    return prims


def _strip_foundation_display(model: Model, strip) -> list[Primitive]:
    prims: list[Primitive] = []
    style = entity_style(strip.is_new, Pattern.DASHED)
    a, b = geometry.base_line(model, strip)
    half = strip.width_mm / 2
    if strip.along_x:
        _rect(prims, a[0], a[1] - half, b[0], a[1] + half, style)
    else:
        _rect(prims, a[0] - half, a[1], a[0] + half, b[1], style)
    return prims


def _footing_group_display(model: Model, group) -> list[Primitive]:
    prims: list[Primitive] = []
    style = entity_style(group.is_new)
    xs, ys = geometry.group_index_ranges(group)
    half_l, half_w = group.length_mm / 2, group.width_mm / 2
    if not group.along_x:
        half_l, half_w = half_w, half_l
    for iy in range(len(ys)):
        for ix in range(len(xs)):
            cx, cy = geometry.group_cell_position(model, group, ix, iy)
            _rect(prims, cx - half_l, cy - half_w, cx + half_l, cy + half_w, style)
    return prims


def _text_display(text) -> list[Primitive]:
    prims: list[Primitive] = []
    x, y = text.origin
    for i, line in enumerate(text.lines.split("\n")):
        prims.append(TextPrim((x, y - i * text.line_step_mm), text.font_height_mm, line))
    prims.append(Leader((text.origin, text.leader_target)))
    return prims


# ------------------------------------------------------------------- plan

def generate_plan_display(model: Model) -> DisplayList:
    dl = DisplayList()
    dl.extend(generate_axis_display(model))

    for orientation in Orientation:
        try:
            dl.extend(generate_span_dimensions(model, orientation))
        except TooFewAxes:
            pass

    for group in sorted(model.column_groups, key=lambda g: g.id):
        dl.extend(_column_group_display(model, group))
    for partition in sorted(model.partitions, key=lambda p: p.id):
        openings = [o for o in model.openings if o.partition_id == partition.id]
        dl.extend(_partition_display(model, partition, openings))
    for opening in sorted(model.openings, key=lambda o: o.id):
        dl.extend(_opening_display(model, opening))
    for beam in sorted(model.beams, key=lambda b: b.id):
        dl.extend(_beam_display(model, beam, _resolve_column_cell))
    for group in sorted(model.slab_groups, key=lambda g: g.id):
        dl.extend(_slab_group_display(model, group))
    for strip in sorted(model.strip_foundations, key=lambda s: s.id):
        dl.extend(_strip_foundation_display(model, strip))
    for group in sorted(model.footing_groups, key=lambda g: g.id):
        dl.extend(_footing_group_display(model, group))
    for beam in sorted(model.foundation_beams, key=lambda b: b.id):
        dl.extend(_beam_display(model, beam, _resolve_footing_cell))
    for text in sorted(model.texts, key=lambda t: t.id):
        dl.extend(_text_display(text))
    return dl


def explode_dimension(dim: DimLinear, font_height_mm: float = 350.0) -> list[Primitive]:
    """Flatten a linear dimension into segments and text: two extension
    lines, the dimension line, two oblique GOST ticks and the value."""
    nx, ny = _dim_normal(dim)
    q1, q2 = _dim_line_points(dim)
    over = font_height_mm / 2
    prims: list[Primitive] = [
        Segment(dim.p1, (q1[0] + nx * over, q1[1] + ny * over)),
        Segment(dim.p2, (q2[0] + nx * over, q2[1] + ny * over)),
        Segment(q1, q2),
    ]
    # Oblique serifs at 45 degrees to the dimension line.
    dx = dim.p2[0] - dim.p1[0]
    dy = dim.p2[1] - dim.p1[1]
    length = math.hypot(dx, dy) or 1.0
    ux, uy = dx / length, dy / length
    tick = font_height_mm / 2
    for q in (q1, q2):
        tx, ty = (ux - nx) * tick / 2, (uy - ny) * tick / 2
        prims.append(Segment((q[0] - tx, q[1] - ty), (q[0] + tx, q[1] + ty)))
    mid = ((q1[0] + q2[0]) / 2, (q1[1] + q2[1]) / 2)
    prims.append(
        TextPrim(
            (mid[0] + nx * font_height_mm / 2, mid[1] + ny * font_height_mm / 2),
            font_height_mm,
            dim.text,
        )
    )
    return prims


def explode_bubble(bubble: AxisBubble) -> list[Primitive]:
    return [
        Circle(bubble.center, bubble.r),
        TextPrim(
            (bubble.center[0] - bubble.r / 2, bubble.center[1] - bubble.r / 3),
            bubble.r,
            bubble.label,
        ),
    ]


def explode_leader(leader: Leader, font_height_mm: float = 350.0) -> list[Primitive]:
    prims: list[Primitive] = [
        Segment(p, q) for p, q in zip(leader.points, leader.points[1:])
    ]
    if leader.text:
        prims.append(TextPrim(leader.points[0], font_height_mm, leader.text))
    return prims


def _resolve_column_cell(model: Model, ref):
    group = model.column_group_by_id(ref.group_id)
    return geometry.group_cell_position(model, group, ref.ix, ref.iy)


def _resolve_footing_cell(model: Model, ref):
    group = model.footing_group_by_id(ref.group_id)
    return geometry.group_cell_position(model, group, ref.ix, ref.iy)
