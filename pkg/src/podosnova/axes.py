"""Coordination axis grid: resolving groups into concrete labeled axes.

Main groups lay out axes sequentially along the orientation's coordinate:
the first axis of the first group sits at 0 and each axis is followed by
a gap equal to its group's step, including across group boundaries.
Additional axes sit at their base main axis' coordinate plus k*offset
(k = 1..count) and are labeled "<base>/<ordinal>".

Global indices are 1-based positions in ascending coordinate order over
the merged main+additional sequence (main wins coordinate ties).
"""

from __future__ import annotations

from dataclasses import dataclass

from .entities import Anchor, AxisGroup, Model, Orientation
from .errors import DanglingBaseAxis, UnknownAxis


@dataclass(frozen=True)
class ResolvedAxis:
    global_index: int
    coordinate_mm: int
    label: str
    group_id: int
    index_in_group: int
    is_main: bool


def advance_label(start: str, steps: int, alphabet: str) -> str:
    """Advance an axis label: digits increment, letters walk the alphabet.

    Past the alphabet's end the letter repeats ("Я" -> "АА" style).
    """
    if start.isdigit():
        return str(int(start) + steps)
    try:
        pos = alphabet.index(start)
    except ValueError:
        raise UnknownAxis(f"label start {start!r} not in alphabet")
    i = pos + steps
    n = len(alphabet)
    return alphabet[i % n] * (i // n + 1)


def resolve_axes(model: Model, orientation: Orientation) -> list[ResolvedAxis]:
    groups = model.axis_groups(orientation)
    alphabet = model.settings.letter_alphabet

    mains: list[tuple[int, str, AxisGroup, int]] = []  # (coord, label, group, idx)
    cursor = 0
    for group in groups:
        if not group.is_main:
            continue
        for i in range(group.count):
            coord = cursor + i * group.step_mm
            label = advance_label(group.label_start, i, alphabet)
            mains.append((coord, label, group, i))
        cursor += group.count * group.step_mm

    additionals: list[tuple[int, int, AxisGroup, int]] = []  # (coord, base_ix, group, idx)
    for order, group in enumerate(groups):
        if group.is_main:
            continue
        base_ix = group.base_axis
        if base_ix is None or not (1 <= base_ix <= len(mains)):
            raise DanglingBaseAxis(
                f"axis group {group.id}: base axis {group.base_axis} does not "
                f"resolve among {len(mains)} main {orientation.value.upper()} axes"
            )
        base_coord = mains[base_ix - 1][0]
        for i in range(group.count):
            additionals.append((base_coord + (i + 1) * group.offset_mm, base_ix, group, i))

    # Ordinals among additionals sharing a base, by coordinate then list order.
    labels: dict[tuple[int, int], str] = {}
    for base_ix in {a[1] for a in additionals}:
        base_label = mains[base_ix - 1][1]
        siblings = [a for a in additionals if a[1] == base_ix]
        siblings.sort(key=lambda a: (a[0], groups.index(a[2]), a[3]))
        for k, (coord, _, group, i) in enumerate(siblings, start=1):
            labels[(group.id, i)] = f"{base_label}/{k}"

    merged: list[tuple[int, int, str, int, int, bool]] = []
    for coord, label, group, i in mains:
        merged.append((coord, 0, label, group.id, i, True))
    for coord, base_ix, group, i in additionals:
        merged.append((coord, 1, labels[(group.id, i)], group.id, i, False))
    merged.sort(key=lambda t: (t[0], t[1], t[3], t[4]))

    return [
        ResolvedAxis(gi, coord, label, group_id, idx, is_main)
        for gi, (coord, _, label, group_id, idx, is_main) in enumerate(merged, start=1)
    ]


def axis_by_index(model: Model, orientation: Orientation, global_index: int) -> ResolvedAxis:
    axes = resolve_axes(model, orientation)
    if not (1 <= global_index <= len(axes)):
        raise UnknownAxis(
            f"{orientation.value.upper()} axis {global_index} unknown "
            f"(grid has {len(axes)})"
        )
    return axes[global_index - 1]


def node_position(model: Model, h_axis: int, v_axis: int) -> tuple[int, int]:
    """World (x, y) of the intersection node of two axes."""
    h = axis_by_index(model, Orientation.H, h_axis)
    v = axis_by_index(model, Orientation.V, v_axis)
    return (v.coordinate_mm, h.coordinate_mm)


def anchor_position(model: Model, anchor: Anchor) -> tuple[int, int]:
    x, y = node_position(model, anchor.h_axis, anchor.v_axis)
    return (x + anchor.dx_mm, y + anchor.dy_mm)


def main_axes(model: Model, orientation: Orientation) -> list[ResolvedAxis]:
    return [a for a in resolve_axes(model, orientation) if a.is_main]
