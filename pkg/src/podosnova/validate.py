"""Whole-model consistency checks.

`check_model` collects human-readable problems; `validate_model` raises
IntegrityError on the first one. Mutation ops keep these invariants, so
the validator mostly guards loaded documents and fuzz tests.
"""

from __future__ import annotations

from . import geometry
from .axes import resolve_axes
from .entities import (
    ENTITY_LIST_FIELDS,
    MAX_AXES_PER_GROUP,
    Model,
    Orientation,
    PERMITTED_LISTS,
)
from .errors import IntegrityError


def check_model(model: Model) -> list[str]:
    problems: list[str] = []

    try:
        model.settings.validate()
    except ValueError as exc:
        problems.append(f"settings: {exc}")

    seen_ids: set[int] = set()
    for entity in model.iter_entities():
        if entity.id in seen_ids:
            problems.append(f"duplicate entity id {entity.id}")
        seen_ids.add(entity.id)
        if entity.id >= model.next_id:
            problems.append(f"entity id {entity.id} >= next_id {model.next_id}")

    permitted = PERMITTED_LISTS[model.kind]
    for name in ENTITY_LIST_FIELDS:
        if name not in permitted and getattr(model, name):
            problems.append(
                f"{name} not permitted on a {model.kind.value} plan"
            )

    axes = {}
    for orientation in Orientation:
        for group in model.axis_groups(orientation):
            if not (1 <= group.count <= MAX_AXES_PER_GROUP):
                problems.append(
                    f"axis group {group.id}: count {group.count} out of range"
                )
            if group.is_main and group.step_mm <= 0:
                problems.append(f"axis group {group.id}: non-positive step")
        try:
            axes[orientation] = resolve_axes(model, orientation)
        except Exception as exc:
            problems.append(f"{orientation.value.upper()} axes: {exc}")
            axes[orientation] = []

    def check_anchor(owner: str, anchor) -> None:
        if not (1 <= anchor.h_axis <= len(axes[Orientation.H])):
            problems.append(f"{owner}: H axis {anchor.h_axis} does not resolve")
        if not (1 <= anchor.v_axis <= len(axes[Orientation.V])):
            problems.append(f"{owner}: V axis {anchor.v_axis} does not resolve")

    for group in model.column_groups:
        check_anchor(f"column group {group.id}", group.start)
        check_anchor(f"column group {group.id}", group.end)
        if group.width_mm <= 0 or group.thickness_mm <= 0:
            problems.append(f"column group {group.id}: non-positive footprint")
        if (group.mark is None) == (group.unmarked_type is None):
            problems.append(
                f"column group {group.id}: exactly one of mark/unmarked_type required"
            )

    for partition in model.partitions:
        check_anchor(f"partition {partition.id}", partition.anchor)
        if partition.thickness_mm <= 0 or partition.length_mm <= 0:
            problems.append(f"partition {partition.id}: non-positive size")

    partition_ids = {p.id for p in model.partitions}
    by_partition: dict[int, list] = {}
    for opening in model.openings:
        if opening.partition_id not in partition_ids:
            problems.append(
                f"opening {opening.id}: partition {opening.partition_id} missing"
            )
            continue
        partition = model.partition_by_id(opening.partition_id)
        lo, hi = geometry.opening_interval(opening)
        if lo < 0 or hi > partition.length_mm:
            problems.append(
                f"opening {opening.id}: [{lo},{hi}] outside partition of length "
                f"{partition.length_mm}"
            )
        if not (1 <= opening.gost_type <= 19):
            problems.append(f"opening {opening.id}: type {opening.gost_type} not 1..19")
        by_partition.setdefault(opening.partition_id, []).append(opening)
    for siblings in by_partition.values():
        siblings.sort(key=lambda o: o.anchor_offset_mm)
        for a, b in zip(siblings, siblings[1:]):
            if geometry.intervals_overlap(
                geometry.opening_interval(a), geometry.opening_interval(b)
            ):
                problems.append(f"openings {a.id} and {b.id} overlap")

    tolerance = model.settings.beam_span_tolerance_mm
    for beam in model.beams:
        check_anchor(f"beam {beam.id}", beam.anchor)
        try:
            pa = geometry.group_cell_position(
                model, _require_group(model.column_group_by_id(beam.end_a.group_id),
                                      beam, problems), beam.end_a.ix, beam.end_a.iy)
            pb = geometry.group_cell_position(
                model, _require_group(model.column_group_by_id(beam.end_b.group_id),
                                      beam, problems), beam.end_b.ix, beam.end_b.iy)
        except Exception as exc:
            problems.append(f"beam {beam.id}: {exc}")
            continue
        _check_beam_geometry(beam, pa, pb, tolerance, problems)

    for strip in model.strip_foundations:
        check_anchor(f"strip foundation {strip.id}", strip.anchor)
        if strip.width_mm <= 0 or strip.length_mm <= 0:
            problems.append(f"strip foundation {strip.id}: non-positive size")

    for group in model.footing_groups:
        check_anchor(f"footing group {group.id}", group.start)
        check_anchor(f"footing group {group.id}", group.end)
        if min(group.length_mm, group.width_mm, group.height_mm) <= 0:
            problems.append(f"footing group {group.id}: non-positive dims")

    for beam in model.foundation_beams:
        check_anchor(f"foundation beam {beam.id}", beam.anchor)
        try:
            pa = geometry.group_cell_position(
                model, _require_group(model.footing_group_by_id(beam.end_a.group_id),
                                      beam, problems), beam.end_a.ix, beam.end_a.iy)
            pb = geometry.group_cell_position(
                model, _require_group(model.footing_group_by_id(beam.end_b.group_id),
                                      beam, problems), beam.end_b.ix, beam.end_b.iy)
        except Exception as exc:
            problems.append(f"foundation beam {beam.id}: {exc}")
            continue
        _check_beam_geometry(beam, pa, pb, tolerance, problems)

    for text in model.texts:
        if not text.lines:
            problems.append(f"text {text.id}: empty content")
        if text.leader_target is None:
            problems.append(f"text {text.id}: leader target unset")

    return problems


def _require_group(group, beam, problems):
    if group is None:
        raise LookupError("end group missing")
    return group


def _check_beam_geometry(beam, pa, pb, tolerance, problems) -> None:
    if pa == pb:
        problems.append(f"beam {beam.id}: zero span")
        return
    if pa[1] == pb[1]:
        span, along_x = abs(pb[0] - pa[0]), True
    elif pa[0] == pb[0]:
        span, along_x = abs(pb[1] - pa[1]), False
    else:
        problems.append(f"beam {beam.id}: end columns not collinear")
        return
    if along_x != beam.along_x:
        problems.append(f"beam {beam.id}: direction flag disagrees with geometry")
    if not (0 <= span - beam.length_mm <= tolerance):
        problems.append(
            f"beam {beam.id}: length {beam.length_mm} vs span {span} "
            f"outside tolerance {tolerance}"
        )


def validate_model(model: Model) -> None:
    problems = check_model(model)
    if problems:
        raise IntegrityError("; ".join(problems))
