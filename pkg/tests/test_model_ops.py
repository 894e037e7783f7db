import random

import pytest
from hypothesis import given, settings, strategies as st

from podosnova import ops
from podosnova.axes import anchor_position, resolve_axes
from podosnova.entities import (
    Anchor,
    AxisGroup,
    ColumnRef,
    Model,
    Orientation,
    PartitionType,
    PlanKind,
    entity_anchors,
)
from podosnova.errors import (
    NonAxisAlignedSegment,
    NonRectangularRun,
    NotCollinear,
    OutOfPartition,
    OverlapsOpening,
    PlanKindForbidden,
    PlanKindLocked,
    SpanMismatch,
    UnknownEntity,
)
from podosnova.validate import check_model

from conftest import add_random_partition, make_grid

H = Orientation.H
V = Orientation.V


def floor_2x2() -> Model:
    m = Model(kind=PlanKind.FLOOR)
    m = ops.upsert_axis_group(
        m, AxisGroup(id=0, orientation=H, count=2, step_mm=6000, label_start="А")
    )
    m = ops.upsert_axis_group(
        m, AxisGroup(id=0, orientation=V, count=3, step_mm=6000, label_start="1")
    )
    return m


def ceiling_with_columns(catalog) -> Model:
    m = floor_2x2()
    m.kind = PlanKind.CEILING
    m = ops.place_column_group(
        m,
        start=Anchor(h_axis=1, v_axis=1),
        end=Anchor(h_axis=1, v_axis=3),
        mark="ЗК96-7",
        catalog=catalog,
    )
    return m


# ------------------------------------------------------------------ purity

def test_ops_do_not_mutate_input(ref_model):
    before = ref_model.clone()
    ops.place_text(ref_model, lines="x", origin=(0, 0), leader_target=(1, 1))
    assert ref_model.entity_lists() == before.entity_lists()
    assert ref_model.axis_groups_h == before.axis_groups_h


def test_ids_monotonic(ref_model):
    seen = [e.id for e in ref_model.iter_entities()]
    assert len(seen) == len(set(seen))
    assert max(seen) < ref_model.next_id


# ------------------------------------------------------- plan kind gating

def test_gating_floor_rejects_beam(catalog, ref_model):
    with pytest.raises(PlanKindForbidden):
        ops.place_beam(
            ref_model,
            end_a=ColumnRef(group_id=1, ix=0, iy=0),
            end_b=ColumnRef(group_id=1, ix=1, iy=0),
            mark="2БСО 12-6 АШв",
            catalog=catalog,
        )


def test_gating_ceiling_rejects_opening(catalog):
    m = ceiling_with_columns(catalog)
    with pytest.raises(PlanKindForbidden):
        ops.place_opening(
            m,
            ops.OpeningPlacement(partition_id=1, offset_mm=0, along_x=True),
            gost_type=1,
            width_mm=900,
            height_mm=2000,
        )


def test_axis_edits_locked_off_floor(catalog):
    m = ceiling_with_columns(catalog)
    with pytest.raises(PlanKindLocked):
        ops.upsert_axis_group(
            m, AxisGroup(id=0, orientation=H, count=1, step_mm=3000, label_start="Я")
        )


# ------------------------------------------------------------ axis editing

def test_upsert_changes_step_keeps_anchors(ref_model):
    group = ref_model.axis_groups_h[0]
    from dataclasses import replace

    edited = ops.upsert_axis_group(ref_model, replace(group, step_mm=7000))
    for entity, after in zip(ref_model.iter_entities(), edited.iter_entities()):
        assert entity_anchors(entity) == entity_anchors(after)


def test_delete_axis_group_preserves_world_positions(ref_model):
    victim = ref_model.axis_groups_v[1]  # the additional group
    before = {
        e.id: [anchor_position(ref_model, a) for a in entity_anchors(e)]
        for e in ref_model.iter_entities()
    }
    after_model = ops.delete_axis_group(ref_model, victim.id)
    for e in after_model.iter_entities():
        got = [anchor_position(after_model, a) for a in entity_anchors(e)]
        assert got == before[e.id]
    assert check_model(after_model) == []


def test_shrink_count_remaps_orphans():
    from dataclasses import replace

    m = floor_2x2()
    m = add_random_partition(random.Random(5), m)
    v_group = m.axis_groups_v[0]
    shrunk = ops.upsert_axis_group(m, replace(v_group, count=1))
    assert check_model(shrunk) == []


# --------------------------------------------------------------- partitions

def test_partition_chain_l_shape():
    m = floor_2x2()
    m = ops.place_partition_chain(
        m,
        gost_type=PartitionType.ORDINARY,
        thickness_mm=120,
        bearing=False,
        polyline=[(0, 0), (3000, 0), (3000, 2000)],
    )
    assert len(m.partitions) == 2
    chain_ids = {p.chain_id for p in m.partitions}
    assert len(chain_ids) == 1
    assert sorted(p.length_mm for p in m.partitions) == [2000, 3000]


def test_partition_rejects_diagonal():
    m = floor_2x2()
    with pytest.raises(NonAxisAlignedSegment):
        ops.place_partition_chain(
            m,
            gost_type=PartitionType.ORDINARY,
            thickness_mm=120,
            bearing=False,
            polyline=[(0, 0), (1000, 1000)],
        )


# ----------------------------------------------------------------- openings

def test_opening_bounds_and_overlap():
    m = floor_2x2()
    m = ops.place_partition_chain(
        m,
        gost_type=PartitionType.ORDINARY,
        thickness_mm=120,
        bearing=False,
        polyline=[(0, 0), (3000, 0)],
    )
    pid = m.partitions[0].id
    m = ops.place_opening(
        m,
        ops.OpeningPlacement(partition_id=pid, offset_mm=500, along_x=True),
        gost_type=1,
        width_mm=900,
        height_mm=2000,
    )
    with pytest.raises(OutOfPartition):
        ops.place_opening(
            m,
            ops.OpeningPlacement(partition_id=pid, offset_mm=2500, along_x=True),
            gost_type=1,
            width_mm=900,
            height_mm=2000,
        )
    with pytest.raises(OverlapsOpening):
        ops.place_opening(
            m,
            ops.OpeningPlacement(partition_id=pid, offset_mm=1300, along_x=True),
            gost_type=1,
            width_mm=900,
            height_mm=2000,
        )
    # Touching intervals are legal.
    m = ops.place_opening(
        m,
        ops.OpeningPlacement(partition_id=pid, offset_mm=1400, along_x=True),
        gost_type=1,
        width_mm=900,
        height_mm=2000,
    )
    assert len(m.openings) == 2


def test_cycle_opening_variant_period_four(ref_model):
    target = ref_model.openings[0].id
    states = []
    m = ref_model
    for _ in range(5):
        opening = next(o for o in m.openings if o.id == target)
        states.append((opening.rot180, opening.along_x))
        m = ops.cycle_opening_variant(m, target)
    assert states[4] == states[0]
    assert len(set(states[:4])) == 4
    # Gray code: one bit flips per press.
    for a, b in zip(states, states[1:]):
        assert (a[0] != b[0]) + (a[1] != b[1]) == 1


def test_snap_preview_clamps_to_partition_ends():
    m = floor_2x2()
    m = ops.place_partition_chain(
        m,
        gost_type=PartitionType.ORDINARY,
        thickness_mm=120,
        bearing=False,
        polyline=[(0, 0), (3000, 0)],
    )
    placement = ops.snap_opening_preview(m, (-400, 100), 900)
    assert placement is not None and placement.offset_mm == 0
    placement = ops.snap_opening_preview(m, (3400, -100), 900)
    assert placement is not None and placement.offset_mm == 2100
    assert ops.snap_opening_preview(m, (1500, 600), 900) is None


def test_snap_preview_centers_on_cursor():
    m = floor_2x2()
    m = ops.place_partition_chain(
        m,
        gost_type=PartitionType.ORDINARY,
        thickness_mm=120,
        bearing=False,
        polyline=[(0, 0), (3000, 0)],
    )
    placement = ops.snap_opening_preview(m, (1500, 100), 900)
    assert placement == ops.OpeningPlacement(
        partition_id=m.partitions[0].id, offset_mm=1050, along_x=True
    )


# -------------------------------------------------------------------- beams

def test_beam_span_rule(catalog):
    m = ceiling_with_columns(catalog)
    a = ColumnRef(group_id=m.column_groups[0].id, ix=0, iy=0)
    b = ColumnRef(group_id=m.column_groups[0].id, ix=2, iy=0)
    m2 = ops.place_beam(m, end_a=a, end_b=b, mark="2БСО 12-6 АШв", catalog=catalog)
    assert len(m2.beams) == 1
    with pytest.raises(SpanMismatch):
        ops.place_beam(m, end_a=a, end_b=b, mark="ИБ 8-21", catalog=catalog)


def test_beam_requires_collinear_ends(catalog):
    m = floor_2x2()
    m.kind = PlanKind.CEILING
    m = ops.place_column_group(
        m,
        start=Anchor(h_axis=1, v_axis=1),
        end=Anchor(h_axis=2, v_axis=3),
        mark="ЗК96-7",
        catalog=catalog,
    )
    gid = m.column_groups[0].id
    with pytest.raises(NotCollinear):
        ops.place_beam(
            m,
            end_a=ColumnRef(group_id=gid, ix=0, iy=0),
            end_b=ColumnRef(group_id=gid, ix=1, iy=1),
            dims_mm=(8400, 280, 890),
            catalog=catalog,
        )


# ------------------------------------------------------------ column groups

def test_column_group_rectangular_run_check(catalog):
    m = floor_2x2()
    with pytest.raises(NonRectangularRun):
        ops.place_column_group(
            m,
            start=Anchor(h_axis=1, v_axis=1, dx_mm=100),
            end=Anchor(h_axis=1, v_axis=3, dx_mm=-100),
            mark="ЗК96-7",
            catalog=catalog,
        )


def test_column_group_mark_xor_unmarked(catalog):
    m = floor_2x2()
    with pytest.raises(ValueError):
        ops.place_column_group(
            m,
            start=Anchor(h_axis=1, v_axis=1),
            end=Anchor(h_axis=1, v_axis=3),
            catalog=catalog,
        )


# ----------------------------------------------------------------- deletion

def test_delete_partition_cascades_openings(ref_model):
    bearing = next(p for p in ref_model.partitions if p.bearing)
    orphaned = [o.id for o in ref_model.openings if o.partition_id == bearing.id]
    assert orphaned
    m = ops.delete_entity(ref_model, bearing.id)
    assert all(o.partition_id != bearing.id for o in m.openings)
    assert check_model(m) == []


def test_delete_column_group_cascades_beams(catalog):
    m = ceiling_with_columns(catalog)
    gid = m.column_groups[0].id
    m = ops.place_beam(
        m,
        end_a=ColumnRef(group_id=gid, ix=0, iy=0),
        end_b=ColumnRef(group_id=gid, ix=2, iy=0),
        mark="2БСО 12-6 АШв",
        catalog=catalog,
    )
    m = ops.delete_entity(m, gid)
    assert m.column_groups == [] and m.beams == []
    assert check_model(m) == []


def test_delete_unknown_entity(ref_model):
    with pytest.raises(UnknownEntity):
        ops.delete_entity(ref_model, 10_000)


# ----------------------------------------------------------- property tests

@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_random_grids_validate_clean(seed):
    rng = random.Random(seed)
    m = make_grid(rng)
    for _ in range(rng.randint(0, 3)):
        m = add_random_partition(rng, m)
    assert check_model(m) == []


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_step_change_preserves_anchor_tuples(seed):
    from dataclasses import replace

    rng = random.Random(seed)
    m = make_grid(rng)
    for _ in range(rng.randint(1, 3)):
        m = add_random_partition(rng, m)
    group = rng.choice(m.axis_groups_h + m.axis_groups_v)
    if not group.is_main:
        return
    edited = ops.upsert_axis_group(m, replace(group, step_mm=group.step_mm + 500))
    assert [entity_anchors(e) for e in m.iter_entities()] == [
        entity_anchors(e) for e in edited.iter_entities()
    ]
    assert check_model(edited) == []


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_delete_group_world_invariance_random(seed):
    rng = random.Random(seed)
    m = make_grid(rng, max_groups=3)
    for _ in range(rng.randint(1, 3)):
        m = add_random_partition(rng, m)
    deletable = [
        g
        for g in m.axis_groups_h + m.axis_groups_v
        if not g.is_main
        or sum(
            1
            for o in (m.axis_groups_h if g.orientation is H else m.axis_groups_v)
            if o.is_main
        )
        > 1
    ]
    if not deletable:
        return
    victim = rng.choice(deletable)
    before = {
        e.id: [anchor_position(m, a) for a in entity_anchors(e)]
        for e in m.iter_entities()
    }
    after = ops.delete_axis_group(m, victim.id)
    for e in after.iter_entities():
        assert [anchor_position(after, a) for a in entity_anchors(e)] == before[e.id]
    assert check_model(after) == []


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_resolved_axes_sorted_and_unique(seed):
    rng = random.Random(seed)
    m = make_grid(rng, max_groups=3)
    for orientation in (H, V):
        axes = resolve_axes(m, orientation)
        coords = [a.coordinate_mm for a in axes]
        assert coords == sorted(coords)
        assert [a.global_index for a in axes] == list(range(1, len(axes) + 1))
