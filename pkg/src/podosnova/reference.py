"""Reference floor model used by goldens, size regression and docs.

Scale matches a small industrial floor plan: two axis groups per
orientation, one four-column group, four partitions in three chains,
three openings and two text notes.
"""

from __future__ import annotations

from . import ops
from .catalog import Catalog, default_catalog
from .entities import (
    Anchor,
    AxisGroup,
    Model,
    OpeningSectionExtra,
    LintelSpec,
    Orientation,
    PartitionType,
    PlanKind,
)


def reference_floor_model(catalog: Catalog | None = None) -> Model:
    catalog = catalog or default_catalog()
    m = Model(kind=PlanKind.FLOOR)
    m = ops.upsert_axis_group(
        m, AxisGroup(id=0, orientation=Orientation.H, count=3, step_mm=6000,
                     label_start="А")
    )
    m = ops.upsert_axis_group(
        m, AxisGroup(id=0, orientation=Orientation.H, count=2, step_mm=7500,
                     label_start="Г")
    )
    m = ops.upsert_axis_group(
        m, AxisGroup(id=0, orientation=Orientation.V, count=4, step_mm=6000,
                     label_start="1")
    )
    m = ops.upsert_axis_group(
        m, AxisGroup(id=0, orientation=Orientation.V, count=1, base_axis=4,
                     offset_mm=1500, label_start="1")
    )

    m = ops.place_column_group(
        m,
        start=Anchor(h_axis=2, v_axis=1),
        end=Anchor(h_axis=2, v_axis=4),
        mark="ЗК96-7",
        catalog=catalog,
    )

    m = ops.place_partition_chain(
        m,
        gost_type=PartitionType.ORDINARY,
        thickness_mm=120,
        bearing=False,
        polyline=[(0, 0), (6000, 0), (6000, 6000)],
    )
    m = ops.place_partition_chain(
        m,
        gost_type=PartitionType.BRICK,
        thickness_mm=250,
        bearing=True,
        polyline=[(0, 6000), (12000, 6000)],
    )
    m = ops.place_partition_chain(
        m,
        gost_type=PartitionType.GLAZED1,
        thickness_mm=120,
        bearing=False,
        polyline=[(12000, 0), (12000, 6000)],
    )

    first_partition = m.partitions[0]
    m = ops.place_opening(
        m,
        ops.OpeningPlacement(
            partition_id=first_partition.id, offset_mm=2270, along_x=True
        ),
        gost_type=6,
        mark="ОР 15-6",
        section_extra=OpeningSectionExtra(
            sill_height_mm=800,
            opening_height_mm=570,
            lintel=LintelSpec(mark="2ПБ19-3-п", length_mm=1940, width_mm=120,
                              height_mm=140),
        ),
        catalog=catalog,
    )
    bearing_partition = next(p for p in m.partitions if p.bearing)
    m = ops.place_opening(
        m,
        ops.OpeningPlacement(
            partition_id=bearing_partition.id, offset_mm=1000, along_x=True
        ),
        gost_type=10,
        mark="ДГ 21-9",
        catalog=catalog,
    )
    m = ops.place_opening(
        m,
        ops.OpeningPlacement(
            partition_id=bearing_partition.id, offset_mm=5000, along_x=True
        ),
        gost_type=1,
        width_mm=910,
        height_mm=2070,
        catalog=catalog,
    )

    m = ops.place_text(
        m,
        lines="Существующая перегородка\nпо оси Б",
        origin=(2000, 8000),
        leader_target=(3000, 6000),
    )
    m = ops.place_text(
        m,
        lines="Колонны сущ.",
        origin=(13000, 7000),
        leader_target=(12000, 6000),
    )
    return m
