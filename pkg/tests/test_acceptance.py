"""End-to-end acceptance checks; each test prints one PASS line."""

import random
import time
from dataclasses import replace

from podosnova import ops
from podosnova.axes import anchor_position, node_position, resolve_axes
from podosnova.capsule import encode_capsule, decode_capsule
from podosnova.catalog import parse_mark_string, render_mark_string
from podosnova.derive import (
    FloorRef,
    FoundationRef,
    Secant,
    SectionSpec,
    StepAction,
    derive_ceiling_plan,
    derive_foundation_plan,
    generate_section_display,
    step_secant,
)
from podosnova.drafting import (
    TextPrim,
    dimension_partition,
    generate_overall_dimension,
    generate_plan_display,
    generate_span_dimensions,
)
from podosnova.dxf import emit_dxf
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
from podosnova.errors import KernelError, SpanMismatch
from podosnova.geometry import base_line
from podosnova.svg import emit_svg
from podosnova.validate import check_model

from conftest import add_random_partition, make_grid
from test_catalog import KNOWN_MARKS

H = Orientation.H
V = Orientation.V


def _passed(line: str) -> None:
    print(f"PASS: {line}")


def test_capsule_compactness(ref_model):
    t0 = time.perf_counter()
    blob = encode_capsule(ref_model)
    model, stub = decode_capsule(blob)
    elapsed = time.perf_counter() - t0
    assert len(blob) <= 4096, f"capsule is {len(blob)} bytes"
    assert elapsed < 1.0
    assert model.entity_lists() == ref_model.entity_lists()
    assert stub.primitives
    _passed(f"reference capsule {len(blob)} bytes <= 4096 in {elapsed * 1e3:.1f} ms")


def test_mark_parser(catalog):
    for text, (dims, _, _) in KNOWN_MARKS.items():
        parsed = parse_mark_string(text)
        assert parsed.dims_mm == dims, text
    count = 0
    for record in catalog.iter_records():
        text = render_mark_string(record)
        parsed = parse_mark_string(text)
        assert (parsed.name, parsed.dims_mm, parsed.metric, parsed.trailer) == (
            record.name,
            record.dims_mm,
            record.metric,
            record.trailer,
        ), text
        count += 1
    _passed(
        f"{len(KNOWN_MARKS)} published mark strings parse exactly; "
        f"parse/render identity over {count} catalog records"
    )


def test_axis_edit_invariance():
    for seed in range(1000):
        rng = random.Random(seed)
        m = make_grid(rng)
        for _ in range(rng.randint(1, 2)):
            m = add_random_partition(rng, m)
        mains = [g for g in m.axis_groups_h + m.axis_groups_v if g.is_main]
        group = rng.choice(mains)
        edited = ops.upsert_axis_group(
            m, replace(group, step_mm=group.step_mm + rng.randrange(500, 3001, 500))
        )
        for before, after in zip(m.iter_entities(), edited.iter_entities()):
            assert entity_anchors(before) == entity_anchors(after)
        for entity in edited.partitions:
            a = entity.anchor
            x, y = node_position(edited, a.h_axis, a.v_axis)
            assert anchor_position(edited, a) == (x + a.dx_mm, y + a.dy_mm)
            assert base_line(edited, entity)[0] == (x + a.dx_mm, y + a.dy_mm)
        assert check_model(edited) == []
    _passed("axis step edits leave 1000 randomized models anchor-identical")


def test_opening_validator_vs_oracle():
    rng = random.Random(20260824)
    base = make_grid(rng)
    cases = 0
    t0 = time.perf_counter()
    while cases < 10_000:
        length = rng.randrange(800, 6001, 10)
        m = ops.place_partition_chain(
            base,
            gost_type=PartitionType.ORDINARY,
            thickness_mm=120,
            bearing=False,
            polyline=[(0, 0), (length, 0)],
        )
        pid = m.partitions[-1].id
        occupied = bytearray(length)
        for _ in range(rng.randint(0, 3)):
            width = rng.randrange(300, 2001, 10)
            offset = rng.randrange(-200, length)
            try:
                m = ops.place_opening(
                    m,
                    ops.OpeningPlacement(partition_id=pid, offset_mm=offset,
                                         along_x=True),
                    gost_type=1,
                    width_mm=width,
                    height_mm=2000,
                )
            except KernelError:
                continue
            occupied[offset:offset + width] = b"\x01" * width
        for _ in range(10):
            width = rng.randrange(300, 2501, 10)
            offset = rng.randrange(-500, length + 500)
            try:
                ops.place_opening(
                    m,
                    ops.OpeningPlacement(partition_id=pid, offset_mm=offset,
                                         along_x=True),
                    gost_type=1,
                    width_mm=width,
                    height_mm=2000,
                )
                accepted = True
            except KernelError:
                accepted = False
            # 1 mm discretization: inside the partition and all cells free.
            fits = 0 <= offset and offset + width <= length
            oracle = fits and not any(occupied[offset:offset + width])
            assert accepted == oracle, (length, offset, width)
            cases += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0
    _passed(f"opening validator matches 1 mm oracle on {cases} cases in "
            f"{elapsed:.2f} s")


def test_beam_span_rule(catalog):
    m = Model(kind=PlanKind.CEILING)
    m = ops.upsert_axis_group(
        m, AxisGroup(id=0, orientation=H, count=2, step_mm=6000, label_start="А")
    )
    m = ops.upsert_axis_group(
        m, AxisGroup(id=0, orientation=V, count=2, step_mm=12000, label_start="1")
    )
    m = ops.place_column_group(
        m,
        start=Anchor(h_axis=1, v_axis=1),
        end=Anchor(h_axis=1, v_axis=2),
        mark="ЗК96-7",
        catalog=catalog,
    )
    gid = m.column_groups[0].id
    ends = dict(
        end_a=ColumnRef(group_id=gid, ix=0, iy=0),
        end_b=ColumnRef(group_id=gid, ix=1, iy=0),
    )
    accepted = ops.place_beam(m, mark="2БСО 12-6 АШв", catalog=catalog, **ends)
    assert len(accepted.beams) == 1
    try:
        ops.place_beam(m, mark="ИБ 8-21", catalog=catalog, **ends)
        raise AssertionError("short beam accepted across a 12000 span")
    except SpanMismatch:
        pass
    _passed("12000 span accepts L=11960 beam and rejects L=5280 with SpanMismatch")


def test_dimension_conservation():
    for seed in range(300):
        rng = random.Random(seed)
        m = make_grid(rng, max_groups=3)
        for orientation in (H, V):
            axes = [a for a in resolve_axes(m, orientation) if a.is_main]
            if len(axes) < 2:
                continue
            spans = generate_span_dimensions(m, orientation)
            overall = generate_overall_dimension(m, orientation)
            assert sum(int(d.text) for d in spans) == int(overall.text)
            assert int(overall.text) == axes[-1].coordinate_mm - axes[0].coordinate_mm
        m = add_random_partition(rng, m)
        partition = m.partitions[-1]
        dims = dimension_partition(m, partition.id)
        assert sum(int(d.text) for d in dims) == partition.length_mm
    _passed("span/overall and partition dimension sums conserved on 300 grids")


def test_derivation_cardinalities(ref_model):
    checked = 0
    for seed in range(100):
        rng = random.Random(seed)
        m = make_grid(rng)
        for _ in range(rng.randint(0, 3)):
            m = add_random_partition(rng, m)
        foundation = derive_foundation_plan(m)
        assert len(foundation.footing_groups) == len(m.column_groups)
        assert len(foundation.strip_foundations) == len(m.partitions)
        ceiling = derive_ceiling_plan(m)
        assert len(ceiling.column_groups) == sum(
            1 for g in m.column_groups if g.mark is not None
        )
        assert len(ceiling.partitions) == sum(1 for p in m.partitions if p.bearing)
        for derived in (foundation, ceiling):
            for orientation in (H, V):
                assert resolve_axes(derived, orientation) == resolve_axes(
                    m, orientation
                )
        checked += 1
    foundation = derive_foundation_plan(ref_model)
    assert len(foundation.footing_groups) == len(ref_model.column_groups) == 1
    assert len(foundation.strip_foundations) == len(ref_model.partitions) == 4
    _passed(f"derivation cardinalities and grid identity on {checked + 1} models")


def test_section_levels(ref_model):
    spec = SectionSpec(
        floors=(FloorRef(plan="f", floor_level_mm=0),
                FloorRef(plan="f", floor_level_mm=6000)),
        secant=Secant(vertices=((-1000, 3000), (30000, 3000))),
        foundation=FoundationRef(plan="fd", sole_level_mm=-1800),
    )
    models = {"f": ref_model, "fd": derive_foundation_plan(ref_model)}
    dl = generate_section_display(spec, models)
    expected = ["−1.800", "±0.000", "+6.000"]
    marks = [
        p.content
        for p in dl.primitives
        if isinstance(p, TextPrim) and p.content in expected
    ]
    assert marks == expected
    secant = spec.secant
    for step in (250, 1000, 3300):
        assert step_secant(
            step_secant(secant, StepAction.SHIFT_FORWARD, step),
            StepAction.SHIFT_BACK,
            step,
        ) == secant
    _passed("section shows −1.800/±0.000/+6.000 ascending; secant shift invertible")


def test_determinism_goldens(ref_model, request):
    goldens = request.path.parent / "goldens"
    dl = generate_plan_display(ref_model)
    svg = emit_svg(dl)
    dxf = emit_dxf(dl)
    assert svg == emit_svg(generate_plan_display(ref_model))
    assert dxf == emit_dxf(generate_plan_display(ref_model))
    assert svg == (goldens / "reference.svg").read_text(encoding="utf-8")
    assert dxf == (goldens / "reference.dxf").read_text(encoding="utf-8")
    _passed("SVG and DXF byte-identical to goldens across repeated runs")


def _random_op(rng: random.Random, m: Model) -> Model:
    roll = rng.random()
    if roll < 0.15:
        orientation = rng.choice([H, V])
        groups = m.axis_groups_h if orientation is H else m.axis_groups_v
        if groups and rng.random() < 0.5:
            victim = rng.choice(groups)
            return ops.delete_axis_group(m, victim.id)
        return ops.upsert_axis_group(
            m,
            AxisGroup(
                id=0,
                orientation=orientation,
                count=rng.randint(1, 6),
                step_mm=rng.randrange(1000, 9001, 500),
                label_start=rng.choice("АБВГД" if orientation is H else "123"),
            ),
        )
    if roll < 0.35:
        return add_random_partition(rng, m)
    if roll < 0.55 and m.partitions:
        partition = rng.choice(m.partitions)
        width = rng.randrange(300, 1501, 10)
        return ops.place_opening(
            m,
            ops.OpeningPlacement(
                partition_id=partition.id,
                offset_mm=rng.randrange(0, max(partition.length_mm, 1)),
                along_x=partition.along_x,
            ),
            gost_type=rng.randint(1, 19),
            width_mm=width,
            height_mm=2000,
        )
    if roll < 0.65:
        h = sum(g.count for g in m.axis_groups_h)
        v = sum(g.count for g in m.axis_groups_v)
        if h and v:
            row = rng.randint(1, h)
            return ops.place_column_group(
                m,
                start=Anchor(h_axis=row, v_axis=1),
                end=Anchor(h_axis=row, v_axis=v),
                unmarked_type=rng.choice(["rc-plain", "rc-1console"]),
                console_len_mm=300,
            )
    if roll < 0.75:
        return ops.place_text(
            m,
            lines="fuzz",
            origin=(rng.randint(-5000, 20000), rng.randint(-5000, 20000)),
            leader_target=(0, 0),
        )
    victims = [e.id for e in m.iter_entities()]
    victims += [g.id for g in m.axis_groups_h + m.axis_groups_v]
    if victims:
        return ops.delete_entity(m, rng.choice(victims))
    return m


def test_integrity_fuzz():
    rng = random.Random(7)
    total_ops = 0
    rejected = 0
    t0 = time.perf_counter()
    while total_ops < 100_000:
        m = make_grid(rng)
        for _ in range(200):
            total_ops += 1
            try:
                m = _random_op(rng, m)
            except KernelError:
                rejected += 1
            if total_ops % 50 == 0:
                problems = check_model(m)
                assert problems == [], problems
        assert check_model(m) == []
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    _passed(
        f"{total_ops} fuzz ops ({rejected} rejected) kept integrity in "
        f"{elapsed:.1f} s"
    )
