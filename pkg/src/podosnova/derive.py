"""Plan derivation and building sections.

Foundation and ceiling plans are derived from a floor plan (grid copied
verbatim, entities mapped per the plan kind). Sections cut along an
axis-aligned secant polyline, unfolded into one straight strip by arc
length, with elevation marks per level.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from . import geometry
from .axes import resolve_axes
from .drafting import (
    AXIS_STYLE,
    AxisBubble,
    DisplayList,
    Pattern,
    Primitive,
    Segment,
    TextPrim,
    entity_style,
)
from .entities import (
    FootingGroup,
    Model,
    Orientation,
    PlanKind,
    StripFoundation,
)
from .errors import (
    DanglingPlanRef,
    NonAxisAlignedSegment,
    RotateOnPolyline,
    WrongKind,
)

Point = tuple[int, int]

# Default sizing margins for derived foundations, pending mark assignment.
FOOTING_MARGIN_MM = 600
STRIP_MARGIN_MM = 200
DEFAULT_FOOTING_HEIGHT_MM = 750
DEFAULT_STOREY_HEIGHT_MM = 3300
DEFAULT_SILL_MM = 0


def derive_foundation_plan(floor: Model, *, bearing_only: bool = False) -> Model:
    """Foundation plan from a floor plan: column groups become footing
    groups, partitions (all or bearing-only) become strip foundations."""
    if floor.kind is not PlanKind.FLOOR:
        raise WrongKind(f"expected a floor plan, got {floor.kind.value}")
    m = Model(
        kind=PlanKind.FOUNDATION,
        settings=floor.settings,
        axis_groups_h=list(floor.axis_groups_h),
        axis_groups_v=list(floor.axis_groups_v),
        next_id=floor.next_id,
    )
    for group in floor.column_groups:
        m.footing_groups.append(
            FootingGroup(
                id=group.id,
                start=group.start,
                end=group.end,
                length_mm=group.width_mm + FOOTING_MARGIN_MM,
                width_mm=group.thickness_mm + FOOTING_MARGIN_MM,
                height_mm=DEFAULT_FOOTING_HEIGHT_MM,
                mark=None,
                center_dx_mm=group.center_dx_mm,
                center_dy_mm=group.center_dy_mm,
                along_x=group.along_x,
                is_new=group.is_new,
            )
        )
    for partition in floor.partitions:
        if bearing_only and not partition.bearing:
            continue
        m.strip_foundations.append(
            StripFoundation(
                id=partition.id,
                chain_id=partition.chain_id,
                width_mm=partition.thickness_mm + STRIP_MARGIN_MM,
                length_mm=partition.length_mm,
                anchor=partition.anchor,
                along_x=partition.along_x,
                is_new=partition.is_new,
            )
        )
    return m


def derive_ceiling_plan(floor: Model) -> Model:
    """Ceiling plan from a floor plan: axes, marked column groups and
    bearing partitions carry over; everything else is dropped."""
    if floor.kind is not PlanKind.FLOOR:
        raise WrongKind(f"expected a floor plan, got {floor.kind.value}")
    m = Model(
        kind=PlanKind.CEILING,
        settings=floor.settings,
        axis_groups_h=list(floor.axis_groups_h),
        axis_groups_v=list(floor.axis_groups_v),
        next_id=floor.next_id,
    )
    m.column_groups = [g for g in floor.column_groups if g.mark is not None]
    m.partitions = [p for p in floor.partitions if p.bearing]
    return m


# -------------------------------------------------------------------- secant

class ViewDirection(str, Enum):
    LEFT_OF_TRAVEL = "left"
    RIGHT_OF_TRAVEL = "right"


class StepAction(str, Enum):
    SHIFT_FORWARD = "shift_forward"
    SHIFT_BACK = "shift_back"
    ROTATE90 = "rotate90"


@dataclass(frozen=True)
class Secant:
    vertices: tuple[Point, ...]
    view_direction: ViewDirection = ViewDirection.LEFT_OF_TRAVEL

    def __post_init__(self):
        if len(self.vertices) < 2:
            raise NonAxisAlignedSegment("secant needs at least one segment")
        for (x1, y1), (x2, y2) in zip(self.vertices, self.vertices[1:]):
            if x1 != x2 and y1 != y2:
                raise NonAxisAlignedSegment(
                    f"secant segment ({x1},{y1})-({x2},{y2}) not parallel to X or Y"
                )

    def segments(self) -> list[tuple[Point, Point]]:
        return list(zip(self.vertices, self.vertices[1:]))

    def total_length(self) -> float:
        return sum(
            abs(b[0] - a[0]) + abs(b[1] - a[1]) for a, b in self.segments()
        )


def step_secant(secant: Secant, action: StepAction, step_mm: int) -> Secant:
    if action is StepAction.ROTATE90:
        if len(secant.vertices) != 2:
            raise RotateOnPolyline("rotation needs a single-segment secant")
        (x1, y1), (x2, y2) = secant.vertices
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        half = (abs(x2 - x1) + abs(y2 - y1)) / 2
        if y1 == y2:  # X-parallel -> Y-parallel
            vertices = ((int(mx), int(my - half)), (int(mx), int(my + half)))
        else:
            vertices = ((int(mx - half), int(my)), (int(mx + half), int(my)))
        return replace(secant, vertices=vertices)

    (x1, y1), (x2, y2) = secant.vertices[0], secant.vertices[1]
    # Forward normal points toward the ascending perpendicular coordinate
    # of the first segment.
    if y1 == y2:
        delta = (0, step_mm)
    else:
        delta = (step_mm, 0)
    if action is StepAction.SHIFT_BACK:
        delta = (-delta[0], -delta[1])
    vertices = tuple((x + delta[0], y + delta[1]) for x, y in secant.vertices)
    return replace(secant, vertices=vertices)


# ------------------------------------------------------------------- section

@dataclass(frozen=True)
class FloorRef:
    plan: str
    floor_level_mm: int


@dataclass(frozen=True)
class FoundationRef:
    plan: str
    sole_level_mm: int


@dataclass(frozen=True)
class RoofRef:
    plan: str
    underside_level_mm: int


@dataclass(frozen=True)
class SectionSpec:
    floors: tuple[FloorRef, ...]
    secant: Secant
    letter: str = "1"
    scale: int = 100  # denominator of 1:N
    foundation: FoundationRef | None = None
    roof: RoofRef | None = None

    def levels(self) -> list[tuple[int, str]]:
        """(level mm, role) bottom to top."""
        out: list[tuple[int, str]] = []
        if self.foundation is not None:
            out.append((self.foundation.sole_level_mm, "sole"))
        for i, floor in enumerate(self.floors):
            out.append((floor.floor_level_mm, f"floor{i + 1}"))
        if self.roof is not None:
            out.append((self.roof.underside_level_mm, "roof"))
        return out

    def validate(self, models: dict[str, Model]) -> None:
        if not self.floors:
            raise DanglingPlanRef("section needs at least one floor")
        expected = (
            [(self.foundation, PlanKind.FOUNDATION)] if self.foundation else []
        )
        expected += [(f, PlanKind.FLOOR) for f in self.floors]
        if self.roof:
            expected.append((self.roof, PlanKind.CEILING))
        for ref, kind in expected:
            model = models.get(ref.plan)
            if model is None:
                raise DanglingPlanRef(f"plan {ref.plan!r} not available")
            if model.kind is not kind:
                raise WrongKind(
                    f"plan {ref.plan!r} is a {model.kind.value} plan, "
                    f"expected {kind.value}"
                )
        levels = [lv for lv, _ in self.levels()]
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise DanglingPlanRef("section levels must be strictly increasing")


def format_elevation(level_mm: int) -> str:
    """Elevation mark text: meters, 3 decimals, GOST sign convention."""
    if level_mm == 0:
        return "±0.000"
    meters = abs(level_mm) / 1000.0
    sign = "+" if level_mm > 0 else "−"
    return f"{sign}{meters:.3f}"


def _rect_segment_overlap(
    rect: tuple[float, float, float, float], a: Point, b: Point
) -> tuple[float, float] | None:
    """Overlap of an axis-aligned segment with a rect, as an interval in
    segment parameter mm from `a`; None when disjoint."""
    x0, y0, x1, y1 = rect
    (ax, ay), (bx, by) = a, b
    if ay == by:  # X-parallel
        if not (y0 <= ay <= y1):
            return None
        lo, hi = sorted((ax, bx))
        s0, s1 = max(lo, x0), min(hi, x1)
        if s0 > s1:
            return None
        if ax <= bx:
            return (s0 - ax, s1 - ax)
        return (ax - s1, ax - s0)
    if not (x0 <= ax <= x1):
        return None
    lo, hi = sorted((ay, by))
    s0, s1 = max(lo, y0), min(hi, y1)
    if s0 > s1:
        return None
    if ay <= by:
        return (s0 - ay, s1 - ay)
    return (ay - s1, ay - s0)


def _entity_rect(model: Model, entity) -> tuple[float, float, float, float]:
    a, b = geometry.base_line(model, entity)
    half = entity.thickness_mm / 2 if hasattr(entity, "thickness_mm") else entity.width_mm / 2
    if entity.along_x:
        return (a[0], a[1] - half, b[0], a[1] + half)
    return (a[0] - half, a[1], a[0] + half, b[1])


def _cell_rects(model: Model, group, half_l: float, half_w: float):
    xs, ys = geometry.group_index_ranges(group)
    for iy in range(len(ys)):
        for ix in range(len(xs)):
            cx, cy = geometry.group_cell_position(model, group, ix, iy)
            yield (cx - half_l, cy - half_w, cx + half_l, cy + half_w)


def _rect_prims(x0, y0, x1, y1, style) -> list[Primitive]:
    return [
        Segment((x0, y0), (x1, y0), style),
        Segment((x1, y0), (x1, y1), style),
        Segment((x1, y1), (x0, y1), style),
        Segment((x0, y1), (x0, y0), style),
    ]


def generate_section_display(spec: SectionSpec, models: dict[str, Model]) -> DisplayList:
    spec.validate(models)
    dl = DisplayList()
    levels = spec.levels()
    level_values = [lv for lv, _ in levels]
    bottom, top = level_values[0], level_values[-1]
    if len(level_values) == 1:
        top = bottom + DEFAULT_STOREY_HEIGHT_MM

    first_floor = models[spec.floors[0].plan]
    ext = first_floor.settings.axis_label_offset_mm
    font = first_floor.settings.gen_font_height_mm

    # Crossed coordination axes become vertical lines in the strip.
    arc_start = 0.0
    axis_marks: list[tuple[float, str]] = []
    for a, b in spec.secant.segments():
        seg_len = abs(b[0] - a[0]) + abs(b[1] - a[1])
        if a[1] == b[1]:
            crossing = resolve_axes(first_floor, Orientation.V)
            lo, hi = sorted((a[0], b[0]))
            for axis in crossing:
                if lo <= axis.coordinate_mm <= hi:
                    s = (
                        axis.coordinate_mm - a[0]
                        if a[0] <= b[0]
                        else a[0] - axis.coordinate_mm
                    )
                    axis_marks.append((arc_start + s, axis.label))
        else:
            crossing = resolve_axes(first_floor, Orientation.H)
            lo, hi = sorted((a[1], b[1]))
            for axis in crossing:
                if lo <= axis.coordinate_mm <= hi:
                    s = (
                        axis.coordinate_mm - a[1]
                        if a[1] <= b[1]
                        else a[1] - axis.coordinate_mm
                    )
                    axis_marks.append((arc_start + s, axis.label))
        arc_start += seg_len

    r = 1.5 * font
    for s, label in axis_marks:
        dl.primitives.append(
            Segment((s, bottom - ext), (s, top + ext), AXIS_STYLE)
        )
        dl.primitives.append(AxisBubble((s, bottom - ext - r), r, label))

    # Elevation marks, ascending.
    for level, _role in levels:
        mark_x = -first_floor.settings.dim_offset_mm
        dl.primitives.append(Segment((mark_x - font, level), (mark_x, level)))
        dl.primitives.append(
            Segment((mark_x - font / 2, level), (mark_x, level + font / 2))
        )
        dl.primitives.append(
            TextPrim((mark_x - font, level + font / 2), font, format_elevation(level))
        )

    # Cut entities per storey.
    floor_tops = []
    for i, floor_ref in enumerate(spec.floors):
        if i + 1 < len(spec.floors):
            storey_top = spec.floors[i + 1].floor_level_mm
        elif spec.roof is not None:
            storey_top = spec.roof.underside_level_mm
        else:
            storey_top = floor_ref.floor_level_mm + DEFAULT_STOREY_HEIGHT_MM
        floor_tops.append(storey_top)

    arc_start = 0.0
    for a, b in spec.secant.segments():
        seg_len = abs(b[0] - a[0]) + abs(b[1] - a[1])
        for i, floor_ref in enumerate(spec.floors):
            floor = models[floor_ref.plan]
            level, storey_top = floor_ref.floor_level_mm, floor_tops[i]
            _cut_floor(dl, floor, a, b, arc_start, level, storey_top)
        if spec.foundation is not None:
            foundation = models[spec.foundation.plan]
            _cut_foundation(
                dl, foundation, a, b, arc_start, spec.foundation.sole_level_mm
            )
        if spec.roof is not None:
            roof = models[spec.roof.plan]
            _cut_roof(dl, roof, a, b, arc_start, spec.roof.underside_level_mm)
        arc_start += seg_len

    # Title above the strip.
    dl.primitives.append(
        TextPrim(
            (0.0, top + ext + 2 * r + font),
            2 * font,
            f"{spec.letter}-{spec.letter}",
        )
    )
    return dl


def _cut_floor(dl, floor, a, b, arc_start, level, storey_top) -> None:
    for group in sorted(floor.column_groups, key=lambda g: g.id):
        style = entity_style(group.is_new)
        half_w = (group.width_mm if group.along_x else group.thickness_mm) / 2
        half_t = (group.thickness_mm if group.along_x else group.width_mm) / 2
        for rect in _cell_rects(floor, group, half_w, half_t):
            overlap = _rect_segment_overlap(rect, a, b)
            if overlap is None:
                continue
            s0, s1 = arc_start + overlap[0], arc_start + overlap[1]
            if s1 - s0 < 1:
                s0, s1 = s0 - half_w, s0 + half_w
            dl.extend(_rect_prims(s0, level, s1, storey_top, style))

    for partition in sorted(floor.partitions, key=lambda p: p.id):
        style = entity_style(partition.is_new)
        rect = _entity_rect(floor, partition)
        overlap = _rect_segment_overlap(rect, a, b)
        if overlap is None:
            continue
        s0, s1 = arc_start + overlap[0], arc_start + overlap[1]
        if s1 - s0 < 1:
            s0, s1 = s0 - partition.thickness_mm / 2, s0 + partition.thickness_mm / 2
        dl.extend(_rect_prims(s0, level, s1, storey_top, style))
        for opening in sorted(floor.openings, key=lambda o: o.id):
            if opening.partition_id != partition.id:
                continue
            extra = opening.section_extra
            sill = extra.sill_height_mm if extra else DEFAULT_SILL_MM
            height = extra.opening_height_mm if extra else opening.height_mm
            y0, y1 = level + sill, level + sill + height
            dl.extend(_rect_prims(s0, y0, s1, y1, style))
            if extra and extra.lintel:
                dl.extend(
                    _rect_prims(s0, y1, s1, y1 + extra.lintel.height_mm, style)
                )


def _cut_foundation(dl, foundation, a, b, arc_start, sole_level) -> None:
    for group in sorted(foundation.footing_groups, key=lambda g: g.id):
        style = entity_style(group.is_new)
        half_l = (group.length_mm if group.along_x else group.width_mm) / 2
        half_w = (group.width_mm if group.along_x else group.length_mm) / 2
        for rect in _cell_rects(foundation, group, half_l, half_w):
            overlap = _rect_segment_overlap(rect, a, b)
            if overlap is None:
                continue
            s0, s1 = arc_start + overlap[0], arc_start + overlap[1]
            if s1 - s0 < 1:
                s0, s1 = s0 - half_l, s0 + half_l
            dl.extend(
                _rect_prims(s0, sole_level, s1, sole_level + group.height_mm, style)
            )
    for strip in sorted(foundation.strip_foundations, key=lambda s: s.id):
        style = entity_style(strip.is_new, Pattern.SOLID)
        rect = _entity_rect(foundation, strip)
        overlap = _rect_segment_overlap(rect, a, b)
        if overlap is None:
            continue
        s0, s1 = arc_start + overlap[0], arc_start + overlap[1]
        if s1 - s0 < 1:
            s0, s1 = s0 - strip.width_mm / 2, s0 + strip.width_mm / 2
        dl.extend(
            _rect_prims(s0, sole_level, s1, sole_level + DEFAULT_FOOTING_HEIGHT_MM, style)
        )


def _cut_roof(dl, roof, a, b, arc_start, underside) -> None:
    for beam in sorted(roof.beams, key=lambda x: x.id):
        style = entity_style(beam.is_new)
        try:
            group = roof.column_group_by_id(beam.end_a.group_id)
            pa = geometry.group_cell_position(roof, group, beam.end_a.ix, beam.end_a.iy)
            group_b = roof.column_group_by_id(beam.end_b.group_id)
            pb = geometry.group_cell_position(roof, group_b, beam.end_b.ix, beam.end_b.iy)
        except Exception:
            continue
        (x0, y0), (x1, y1) = sorted((pa, pb))
        half = beam.width_mm / 2
        rect = (
            (x0, y0 - half, x1, y1 + half)
            if beam.along_x
            else (x0 - half, y0, x1 + half, y1)
        )
        overlap = _rect_segment_overlap(rect, a, b)
        if overlap is None:
            continue
        s0, s1 = arc_start + overlap[0], arc_start + overlap[1]
        if s1 - s0 < 1:
            s0, s1 = s0 - half, s0 + half
        dl.extend(_rect_prims(s0, underside - beam.height_mm, s1, underside, style))
    for group in sorted(roof.slab_groups, key=lambda g: g.id):
        style = entity_style(group.is_new)
        from .axes import anchor_position

        x0, y0 = anchor_position(roof, group.anchor)
        for k in range(group.count):
            if group.along_x:
                rect = (
                    x0,
                    y0 + k * group.width_mm,
                    x0 + group.length_mm,
                    y0 + (k + 1) * group.width_mm,
                )
            else:
                rect = (
                    x0 + k * group.width_mm,
                    y0,
                    x0 + (k + 1) * group.width_mm,
                    y0 + group.length_mm,
                )
            overlap = _rect_segment_overlap(rect, a, b)
            if overlap is None:
                continue
            s0, s1 = arc_start + overlap[0], arc_start + overlap[1]
            dl.extend(_rect_prims(s0, underside, s1, underside + group.height_mm, style))
