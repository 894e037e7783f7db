"""Shared placement geometry: base lines, group grids, projections.

Everything works in integer millimeters; only distances/projections used
for snapping go through floats.
"""

from __future__ import annotations

from .axes import anchor_position, axis_by_index, node_position
from .entities import (
    ColumnGroup,
    FootingGroup,
    Model,
    Opening,
    Orientation,
    Partition,
    StripFoundation,
)
from .errors import UnknownColumn, UnknownFooting

Point = tuple[int, int]


def base_line(model: Model, entity: Partition | StripFoundation) -> tuple[Point, Point]:
    """Base segment of a linear entity, from its anchor along its direction."""
    x0, y0 = anchor_position(model, entity.anchor)
    if entity.along_x:
        return (x0, y0), (x0 + entity.length_mm, y0)
    return (x0, y0), (x0, y0 + entity.length_mm)


def group_index_ranges(group: ColumnGroup | FootingGroup) -> tuple[list[int], list[int]]:
    """(v-axis indices along X, h-axis indices along Y) of the node grid."""
    v_lo, v_hi = sorted((group.start.v_axis, group.end.v_axis))
    h_lo, h_hi = sorted((group.start.h_axis, group.end.h_axis))
    return list(range(v_lo, v_hi + 1)), list(range(h_lo, h_hi + 1))


def group_cell_count(group: ColumnGroup | FootingGroup) -> int:
    xs, ys = group_index_ranges(group)
    return len(xs) * len(ys)


def group_cell_position(
    model: Model, group: ColumnGroup | FootingGroup, ix: int, iy: int
) -> Point:
    """World center of cell (ix, iy); raises if the cell is outside the grid."""
    xs, ys = group_index_ranges(group)
    if not (0 <= ix < len(xs)) or not (0 <= iy < len(ys)):
        err = UnknownColumn if isinstance(group, ColumnGroup) else UnknownFooting
        raise err(
            f"group {group.id}: cell ({ix},{iy}) outside {len(xs)}x{len(ys)} grid"
        )
    x, y = node_position(model, ys[iy], xs[ix])
    return (
        x + group.start.dx_mm + group.center_dx_mm,
        y + group.start.dy_mm + group.center_dy_mm,
    )


def nearest_axis_index(model: Model, orientation: Orientation, coordinate: int) -> int:
    """Global index of the axis closest to a world coordinate."""
    from .axes import resolve_axes

    axes = resolve_axes(model, orientation)
    best = min(axes, key=lambda a: (abs(a.coordinate_mm - coordinate), a.global_index))
    return best.global_index


def nearest_node_anchor(model: Model, point: Point):
    """Anchor at the grid node nearest to a world point, offset preserved."""
    from .entities import Anchor

    v = nearest_axis_index(model, Orientation.V, point[0])
    h = nearest_axis_index(model, Orientation.H, point[1])
    nx, ny = node_position(model, h, v)
    return Anchor(h_axis=h, v_axis=v, dx_mm=point[0] - nx, dy_mm=point[1] - ny)


def point_segment_distance(p: Point, a: Point, b: Point) -> tuple[float, float]:
    """(distance, parameter t in mm along the segment) of the closest point."""
    ax, ay = a
    bx, by = b
    px, py = p
    dx, dy = bx - ax, by - ay
    seg_len_sq = dx * dx + dy * dy
    if seg_len_sq == 0:
        return ((px - ax) ** 2 + (py - ay) ** 2) ** 0.5, 0.0
    t = ((px - ax) * dx + (py - ay) * dy) / seg_len_sq
    t_clamped = min(1.0, max(0.0, t))
    cx, cy = ax + t_clamped * dx, ay + t_clamped * dy
    dist = ((px - cx) ** 2 + (py - cy) ** 2) ** 0.5
    seg_len = seg_len_sq ** 0.5
    return dist, t_clamped * seg_len


def opening_interval(opening: Opening) -> tuple[int, int]:
    return opening.anchor_offset_mm, opening.anchor_offset_mm + opening.width_mm


def intervals_overlap(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[0] < b[1] and b[0] < a[1]


def anchor_resolves(model: Model, anchor) -> bool:
    try:
        axis_by_index(model, Orientation.H, anchor.h_axis)
        axis_by_index(model, Orientation.V, anchor.v_axis)
        return True
    except Exception:
        return False
