"""Mutation operations on the parametric model.

Every operation is a pure value transformation: it clones the incoming
model, edits the clone and returns it, so callers can keep snapshots.
Validation happens up front; a failed operation raises and leaves the
input untouched.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import geometry
from .axes import axis_by_index, resolve_axes
from .catalog import Catalog, MarkFamily, default_catalog
from .entities import (
    Anchor,
    AxisGroup,
    Beam,
    ColumnGroup,
    ColumnRef,
    FootingGroup,
    FootingRef,
    FoundationBeam,
    MAX_AXES_PER_GROUP,
    Model,
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
    UNMARKED_COLUMN_TYPES,
    with_replaced_anchors,
)
from .errors import (
    CountOutOfRange,
    EmptyPolyline,
    LastAxisGroup,
    NonAxisAlignedSegment,
    NonRectangularRun,
    NotCollinear,
    OutOfPartition,
    OverlapsOpening,
    PlanKindForbidden,
    PlanKindLocked,
    SpanMismatch,
    UnbearableDirection,
    UnknownColumn,
    UnknownEntity,
    UnknownFooting,
    UnknownMark,
)

SNAP_CAPTURE_RADIUS_MM = 500

Point = tuple[int, int]


def _require_kind(model: Model, *kinds: PlanKind, what: str) -> None:
    if model.kind not in kinds:
        allowed = ", ".join(k.value for k in kinds)
        raise PlanKindForbidden(
            f"{what} not permitted on a {model.kind.value} plan (allowed: {allowed})"
        )


def _non_axis_content(model: Model) -> bool:
    return any(model.entity_lists()[name] for name in model.entity_lists())


def _check_axis_edit_allowed(model: Model) -> None:
    # Floor plans may edit axes at any time; other kinds only while empty.
    if model.kind is not PlanKind.FLOOR and _non_axis_content(model):
        raise PlanKindLocked(
            f"axis groups of a populated {model.kind.value} plan cannot be edited"
        )


def _lookup_mark(catalog: Catalog, family: MarkFamily, name: str):
    record = catalog.lookup(family, name)
    if record is None:
        raise UnknownMark(f"mark {name!r} not in {family.value} catalog")
    return record


# ---------------------------------------------------------------- axis groups

def upsert_axis_group(model: Model, group: AxisGroup) -> Model:
    if not (1 <= group.count <= MAX_AXES_PER_GROUP):
        raise CountOutOfRange(f"axis count {group.count} not in 1..{MAX_AXES_PER_GROUP}")
    if group.is_main and group.step_mm <= 0:
        raise CountOutOfRange(f"main axis step must be positive, got {group.step_mm}")
    _check_axis_edit_allowed(model)

    m = model.clone()
    groups = m.axis_groups(group.orientation)
    existing_ids = [g.id for g in groups]
    group_id = group.id if group.id else m.take_id()
    group = replace(group, id=group_id)

    old_axes = {
        o: resolve_axes(model, o) for o in Orientation
    }
    if group_id in existing_ids:
        new_list = [group if g.id == group_id else g for g in groups]
    else:
        new_list = groups + [group]
    if group.orientation is Orientation.H:
        m.axis_groups_h = new_list
    else:
        m.axis_groups_v = new_list

    # Resolving validates base-axis references of every group.
    new_axes = {o: resolve_axes(m, o) for o in Orientation}

    # Anchors are kept verbatim; only anchors whose global index vanished
    # (a group shrank) are re-anchored preserving their old world position.
    for orientation in Orientation:
        lost = len(new_axes[orientation]) < len(old_axes[orientation])
        if lost:
            _remap_orphan_anchors(m, orientation, old_axes[orientation], new_axes[orientation])
    return m


def delete_axis_group(model: Model, group_id: int) -> Model:
    _check_axis_edit_allowed(model)
    orientation = None
    for o in Orientation:
        if any(g.id == group_id for g in model.axis_groups(o)):
            orientation = o
            break
    if orientation is None:
        raise UnknownEntity(f"axis group {group_id} not found")

    remaining = [g for g in model.axis_groups(orientation) if g.id != group_id]
    if not any(g.is_main for g in remaining):
        raise LastAxisGroup(
            f"deleting axis group {group_id} would leave no main "
            f"{orientation.value.upper()} axes"
        )

    old_axes = resolve_axes(model, orientation)
    m = model.clone()
    if orientation is Orientation.H:
        m.axis_groups_h = remaining
    else:
        m.axis_groups_v = remaining
    new_axes = resolve_axes(m, orientation)
    _reanchor_world_preserving(m, orientation, old_axes, new_axes)
    return m


def _reanchor_world_preserving(m: Model, orientation, old_axes, new_axes) -> None:
    """Rewrite anchors so every entity's world position survives a grid
    change exactly: each old axis maps to the nearest new axis with the
    coordinate difference absorbed into the anchor offset."""
    mapping: dict[int, tuple[int, int]] = {}  # old index -> (new index, coord delta)
    for old in old_axes:
        best = min(
            new_axes,
            key=lambda a: (abs(a.coordinate_mm - old.coordinate_mm), a.global_index),
        )
        mapping[old.global_index] = (
            best.global_index,
            old.coordinate_mm - best.coordinate_mm,
        )
    _apply_anchor_mapping(m, orientation, mapping)


def _remap_orphan_anchors(m: Model, orientation, old_axes, new_axes) -> None:
    """After a group shrank: indices still in range stay verbatim, out of
    range indices re-anchor to the nearest surviving axis preserving the
    world position they had under the old grid."""
    limit = len(new_axes)
    mapping: dict[int, tuple[int, int]] = {}
    for old in old_axes:
        if old.global_index <= limit:
            continue
        best = min(
            new_axes,
            key=lambda a: (abs(a.coordinate_mm - old.coordinate_mm), a.global_index),
        )
        mapping[old.global_index] = (
            best.global_index,
            old.coordinate_mm - best.coordinate_mm,
        )
    if mapping:
        _apply_anchor_mapping(m, orientation, mapping)


def _apply_anchor_mapping(m: Model, orientation, mapping) -> None:
    def remap(anchor: Anchor) -> Anchor:
        if orientation is Orientation.H:
            if anchor.h_axis not in mapping:
                return anchor
            new_ix, delta = mapping[anchor.h_axis]
            return replace(anchor, h_axis=new_ix, dy_mm=anchor.dy_mm + delta)
        if anchor.v_axis not in mapping:
            return anchor
        new_ix, delta = mapping[anchor.v_axis]
        return replace(anchor, v_axis=new_ix, dx_mm=anchor.dx_mm + delta)

    for name, items in m.entity_lists().items():
        setattr(m, name, [with_replaced_anchors(e, remap) for e in items])


# -------------------------------------------------------------------- columns

def _check_anchor(model: Model, anchor: Anchor) -> None:
    axis_by_index(model, Orientation.H, anchor.h_axis)
    axis_by_index(model, Orientation.V, anchor.v_axis)


def place_column_group(
    model: Model,
    *,
    start: Anchor,
    end: Anchor,
    mark: str | None = None,
    unmarked_type: str | None = None,
    console_len_mm: int | None = None,
    console_left: bool = False,
    center_offset: Point = (0, 0),
    along_x: bool = True,
    is_new: bool = True,
    catalog: Catalog | None = None,
) -> Model:
    _require_kind(model, PlanKind.FLOOR, PlanKind.CEILING, what="column group")
    if (mark is None) == (unmarked_type is None):
        raise ValueError("exactly one of mark / unmarked_type must be given")
    if unmarked_type is not None and unmarked_type not in UNMARKED_COLUMN_TYPES:
        raise ValueError(f"unknown unmarked column type {unmarked_type!r}")
    _check_anchor(model, start)
    _check_anchor(model, end)
    if (start.dx_mm, start.dy_mm) != (end.dx_mm, end.dy_mm):
        raise NonRectangularRun("start/end anchor offsets differ; node run is skewed")

    width, thickness = 400, 400
    if mark is not None:
        record = _lookup_mark(catalog or default_catalog(), MarkFamily.COLUMN, mark)
        # Mark dims are L x W x H; the plan footprint is W x H.
        width, thickness = record.dims_mm[1], record.dims_mm[2]

    m = model.clone()
    m.column_groups.append(
        ColumnGroup(
            id=m.take_id(),
            start=start,
            end=end,
            mark=mark,
            unmarked_type=unmarked_type,
            console_len_mm=console_len_mm,
            console_left=console_left,
            center_dx_mm=center_offset[0],
            center_dy_mm=center_offset[1],
            width_mm=width,
            thickness_mm=thickness,
            along_x=along_x,
            is_new=is_new,
        )
    )
    return m


# ----------------------------------------------------------------- partitions

def _chain_segments(model: Model, polyline: list[Point]):
    if len(polyline) < 2:
        raise EmptyPolyline("polyline needs at least two vertices")
    segments = []
    for (x1, y1), (x2, y2) in zip(polyline, polyline[1:]):
        if x1 != x2 and y1 != y2:
            raise NonAxisAlignedSegment(
                f"segment ({x1},{y1})-({x2},{y2}) is not parallel to X or Y"
            )
        if (x1, y1) == (x2, y2):
            continue
        along_x = y1 == y2
        # Anchor at the segment's lower-left end so length runs positive.
        sx, sy = min(x1, x2), min(y1, y2)
        length = abs(x2 - x1) if along_x else abs(y2 - y1)
        segments.append((geometry.nearest_node_anchor(model, (sx, sy)), along_x, length))
    if not segments:
        raise EmptyPolyline("polyline has no non-degenerate segment")
    return segments


def place_partition_chain(
    model: Model,
    *,
    gost_type: PartitionType,
    thickness_mm: int,
    bearing: bool,
    polyline: list[Point],
    is_new: bool = True,
) -> Model:
    _require_kind(model, PlanKind.FLOOR, PlanKind.CEILING, what="partition")
    if thickness_mm <= 0:
        raise ValueError("partition thickness must be positive")
    segments = _chain_segments(model, polyline)
    m = model.clone()
    chain_id = m.take_id()
    for anchor, along_x, length in segments:
        m.partitions.append(
            Partition(
                id=m.take_id(),
                chain_id=chain_id,
                gost_type=gost_type,
                thickness_mm=thickness_mm,
                length_mm=length,
                anchor=anchor,
                bearing=bearing,
                along_x=along_x,
                is_new=is_new,
            )
        )
    return m


# ------------------------------------------------------------------- openings

@dataclass(frozen=True)
class OpeningPlacement:
    partition_id: int
    offset_mm: int
    along_x: bool
    rot180: bool = False


def snap_opening_preview(
    model: Model,
    cursor: Point,
    width_mm: int,
    capture_radius_mm: int = SNAP_CAPTURE_RADIUS_MM,
) -> OpeningPlacement | None:
    """Fit an opening of the given width into the partition nearest the
    cursor. Returns None (no target) outside the capture radius, when the
    opening cannot fit, or when the snapped slot overlaps a sibling."""
    best = None
    for partition in model.partitions:
        a, b = geometry.base_line(model, partition)
        dist, t = geometry.point_segment_distance(cursor, a, b)
        if dist <= capture_radius_mm and (best is None or dist < best[0]):
            best = (dist, t, partition)
    if best is None:
        return None
    _, t, partition = best
    if width_mm > partition.length_mm:
        return None
    offset = int(round(t - width_mm / 2))
    offset = max(0, min(partition.length_mm - width_mm, offset))
    slot = (offset, offset + width_mm)
    for opening in model.openings:
        if opening.partition_id == partition.id and geometry.intervals_overlap(
            slot, geometry.opening_interval(opening)
        ):
            return None
    return OpeningPlacement(
        partition_id=partition.id, offset_mm=offset, along_x=partition.along_x
    )


def place_opening(
    model: Model,
    placement: OpeningPlacement,
    *,
    gost_type: int,
    mark: str | None = None,
    width_mm: int | None = None,
    height_mm: int | None = None,
    is_new: bool = True,
    section_extra: OpeningSectionExtra | None = None,
    catalog: Catalog | None = None,
) -> Model:
    _require_kind(model, PlanKind.FLOOR, what="opening")
    if not (1 <= gost_type <= 19):
        raise ValueError(f"opening type {gost_type} not in 1..19")
    partition = model.partition_by_id(placement.partition_id)
    if partition is None:
        raise UnknownEntity(f"partition {placement.partition_id} not found")
    if mark is not None:
        record = _lookup_mark(catalog or default_catalog(), MarkFamily.OPENING, mark)
        width_mm, height_mm = record.dims_mm[0], record.dims_mm[1]
    if width_mm is None or height_mm is None:
        raise ValueError("unmarked opening needs explicit width and height")
    offset = placement.offset_mm
    if offset < 0 or offset + width_mm > partition.length_mm:
        raise OutOfPartition(
            f"opening [{offset},{offset + width_mm}] outside partition "
            f"{partition.id} of length {partition.length_mm}"
        )
    slot = (offset, offset + width_mm)
    for sibling in model.openings:
        if sibling.partition_id == partition.id and geometry.intervals_overlap(
            slot, geometry.opening_interval(sibling)
        ):
            raise OverlapsOpening(
                f"opening overlaps opening {sibling.id} on partition {partition.id}"
            )
    m = model.clone()
    m.openings.append(
        Opening(
            id=m.take_id(),
            partition_id=partition.id,
            gost_type=gost_type,
            width_mm=width_mm,
            height_mm=height_mm,
            anchor_offset_mm=offset,
            mark=mark,
            along_x=placement.along_x,
            rot180=placement.rot180,
            is_new=is_new,
            section_extra=section_extra,
        )
    )
    return m


# Gray-code walk over (rot180, side) so four presses return to the start.
_VARIANT_CYCLE = [(False, False), (True, False), (True, True), (False, True)]


def cycle_opening_variant(model: Model, opening_id: int) -> Model:
    found = model.find_entity(opening_id)
    if found is None or found[0] != "openings":
        raise UnknownEntity(f"opening {opening_id} not found")
    opening = found[1]
    state = (opening.rot180, opening.along_x)
    rot180, side = _VARIANT_CYCLE[(_VARIANT_CYCLE.index(state) + 1) % 4]
    m = model.clone()
    m.openings = [
        replace(o, rot180=rot180, along_x=side) if o.id == opening_id else o
        for o in m.openings
    ]
    return m


# ---------------------------------------------------------------------- beams

def _resolve_column_ref(model: Model, ref: ColumnRef) -> Point:
    group = model.column_group_by_id(ref.group_id)
    if group is None:
        raise UnknownColumn(f"column group {ref.group_id} not found")
    return geometry.group_cell_position(model, group, ref.ix, ref.iy)


def _span_and_direction(pa: Point, pb: Point, what: str) -> tuple[int, bool]:
    if pa == pb:
        raise NotCollinear(f"{what} ends at the same point {pa}")
    if pa[1] == pb[1]:
        return abs(pb[0] - pa[0]), True
    if pa[0] == pb[0]:
        return abs(pb[1] - pa[1]), False
    raise NotCollinear(f"{what} ends {pa} and {pb} are not collinear along X or Y")


def _check_span(span: int, length: int, tolerance: int) -> None:
    if not (0 <= span - length <= tolerance):
        raise SpanMismatch(
            f"length {length} does not match span {span} "
            f"(slack {span - length}, tolerance {tolerance})"
        )


def place_beam(
    model: Model,
    *,
    end_a: ColumnRef,
    end_b: ColumnRef,
    mark: str | None = None,
    dims_mm: tuple[int, int, int] | None = None,
    is_new: bool = True,
    catalog: Catalog | None = None,
) -> Model:
    _require_kind(model, PlanKind.CEILING, what="beam")
    cat = catalog or default_catalog()
    if mark is not None:
        record = _lookup_mark(cat, MarkFamily.BEAM, mark)
        length, width, height = record.dims_mm
    elif dims_mm is not None:
        length, width, height = dims_mm
    else:
        raise ValueError("beam needs a mark or explicit dims")

    pa = _resolve_column_ref(model, end_a)
    pb = _resolve_column_ref(model, end_b)
    span, along_x = _span_and_direction(pa, pb, "beam")
    _check_span(span, length, model.settings.beam_span_tolerance_mm)

    direction = "x" if along_x else "y"
    for ref in (end_a, end_b):
        group = model.column_group_by_id(ref.group_id)
        if group.mark is not None:
            record = cat.lookup(MarkFamily.COLUMN, group.mark)
            if record is not None and record.bearing and direction not in record.bearing:
                raise UnbearableDirection(
                    f"column mark {group.mark!r} cannot bear beams along "
                    f"{direction.upper()}"
                )

    m = model.clone()
    m.beams.append(
        Beam(
            id=m.take_id(),
            length_mm=length,
            width_mm=width,
            height_mm=height,
            anchor=geometry.nearest_node_anchor(model, pa),
            end_a=end_a,
            end_b=end_b,
            mark=mark,
            along_x=along_x,
            is_new=is_new,
        )
    )
    return m


# ----------------------------------------------------------- slabs/foundation

def place_slab_group(
    model: Model,
    *,
    anchor: Anchor,
    count: int,
    mark: str | None = None,
    dims_mm: tuple[int, int, int] | None = None,
    along_x: bool = True,
    is_new: bool = True,
    catalog: Catalog | None = None,
) -> Model:
    _require_kind(model, PlanKind.CEILING, what="slab group")
    if count < 1:
        raise ValueError("slab group count must be >= 1")
    _check_anchor(model, anchor)
    if mark is not None:
        record = _lookup_mark(catalog or default_catalog(), MarkFamily.SLAB, mark)
        length, width, height = record.dims_mm
    elif dims_mm is not None:
        length, width, height = dims_mm
    else:
        raise ValueError("slab group needs a mark or explicit dims")
    m = model.clone()
    m.slab_groups.append(
        SlabGroup(
            id=m.take_id(),
            length_mm=length,
            width_mm=width,
            height_mm=height,
            anchor=anchor,
            count=count,
            mark=mark,
            along_x=along_x,
            is_new=is_new,
        )
    )
    return m


def place_strip_foundation_chain(
    model: Model,
    *,
    width_mm: int,
    polyline: list[Point],
    is_new: bool = True,
) -> Model:
    _require_kind(model, PlanKind.FOUNDATION, what="strip foundation")
    if width_mm <= 0:
        raise ValueError("strip foundation width must be positive")
    segments = _chain_segments(model, polyline)
    m = model.clone()
    chain_id = m.take_id()
    for anchor, along_x, length in segments:
        m.strip_foundations.append(
            StripFoundation(
                id=m.take_id(),
                chain_id=chain_id,
                width_mm=width_mm,
                length_mm=length,
                anchor=anchor,
                along_x=along_x,
                is_new=is_new,
            )
        )
    return m


def place_footing_group(
    model: Model,
    *,
    start: Anchor,
    end: Anchor,
    mark: str | None = None,
    dims_mm: tuple[int, int, int] | None = None,
    center_offset: Point = (0, 0),
    along_x: bool = True,
    is_new: bool = True,
    catalog: Catalog | None = None,
) -> Model:
    _require_kind(model, PlanKind.FOUNDATION, what="footing group")
    _check_anchor(model, start)
    _check_anchor(model, end)
    if (start.dx_mm, start.dy_mm) != (end.dx_mm, end.dy_mm):
        raise NonRectangularRun("start/end anchor offsets differ; node run is skewed")
    if mark is not None:
        record = _lookup_mark(catalog or default_catalog(), MarkFamily.FOOTING, mark)
        length, width, height = record.dims_mm
    elif dims_mm is not None:
        length, width, height = dims_mm
    else:
        raise ValueError("footing group needs a mark or explicit dims")
    m = model.clone()
    m.footing_groups.append(
        FootingGroup(
            id=m.take_id(),
            start=start,
            end=end,
            length_mm=length,
            width_mm=width,
            height_mm=height,
            mark=mark,
            center_dx_mm=center_offset[0],
            center_dy_mm=center_offset[1],
            along_x=along_x,
            is_new=is_new,
        )
    )
    return m


def _resolve_footing_ref(model: Model, ref: FootingRef) -> Point:
    group = model.footing_group_by_id(ref.group_id)
    if group is None:
        raise UnknownFooting(f"footing group {ref.group_id} not found")
    return geometry.group_cell_position(model, group, ref.ix, ref.iy)


def place_foundation_beam(
    model: Model,
    *,
    end_a: FootingRef,
    end_b: FootingRef,
    seat_a: Seat = Seat.CENTER,
    mark: str | None = None,
    dims_mm: tuple[int, int, int] | None = None,
    is_new: bool = True,
    catalog: Catalog | None = None,
) -> Model:
    _require_kind(model, PlanKind.FOUNDATION, what="foundation beam")
    if mark is not None:
        record = _lookup_mark(
            catalog or default_catalog(), MarkFamily.FOUNDATION_BEAM, mark
        )
        length, width, height = record.dims_mm
    elif dims_mm is not None:
        length, width, height = dims_mm
    else:
        raise ValueError("foundation beam needs a mark or explicit dims")
    pa = _resolve_footing_ref(model, end_a)
    pb = _resolve_footing_ref(model, end_b)
    span, along_x = _span_and_direction(pa, pb, "foundation beam")
    _check_span(span, length, model.settings.beam_span_tolerance_mm)
    m = model.clone()
    m.foundation_beams.append(
        FoundationBeam(
            id=m.take_id(),
            length_mm=length,
            width_mm=width,
            height_mm=height,
            anchor=geometry.nearest_node_anchor(model, pa),
            end_a=end_a,
            end_b=end_b,
            seat_a=seat_a,
            mark=mark,
            along_x=along_x,
            is_new=is_new,
        )
    )
    return m


# ---------------------------------------------------------------------- texts

def place_text(
    model: Model,
    *,
    lines: str,
    origin: Point,
    leader_target: Point,
    font_height_mm: int | None = None,
    line_step_mm: int = 500,
) -> Model:
    if not lines:
        raise ValueError("text note needs content")
    m = model.clone()
    m.texts.append(
        TextNote(
            id=m.take_id(),
            lines=lines,
            origin=origin,
            leader_target=leader_target,
            font_height_mm=font_height_mm or model.settings.gen_font_height_mm,
            line_step_mm=line_step_mm,
        )
    )
    return m


# ------------------------------------------------------------------- deletion

def delete_entity(model: Model, entity_id: int) -> Model:
    """Delete one entity with referential cascades: a partition takes its
    openings, a column or footing group takes the beams resting on it."""
    found = model.find_entity(entity_id)
    if found is None:
        raise UnknownEntity(f"entity {entity_id} not found")
    list_name, _ = found
    if list_name in ("axis_groups_h", "axis_groups_v"):
        return delete_axis_group(model, entity_id)

    m = model.clone()
    items = getattr(m, list_name)
    setattr(m, list_name, [e for e in items if e.id != entity_id])
    if list_name == "partitions":
        m.openings = [o for o in m.openings if o.partition_id != entity_id]
    elif list_name == "column_groups":
        m.beams = [
            b
            for b in m.beams
            if entity_id not in (b.end_a.group_id, b.end_b.group_id)
        ]
    elif list_name == "footing_groups":
        m.foundation_beams = [
            b
            for b in m.foundation_beams
            if entity_id not in (b.end_a.group_id, b.end_b.group_id)
        ]
    return m
