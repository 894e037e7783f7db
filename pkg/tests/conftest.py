import random

import pytest

from podosnova import ops
from podosnova.catalog import default_catalog
from podosnova.entities import AxisGroup, Model, Orientation, PartitionType, PlanKind
from podosnova.reference import reference_floor_model


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture()
def ref_model(catalog):
    return reference_floor_model(catalog)


def make_grid(
    rng: random.Random,
    kind: PlanKind = PlanKind.FLOOR,
    max_groups: int = 2,
    max_count: int = 5,
) -> Model:
    """A floor-style model with 1..max_groups main groups per orientation."""
    m = Model(kind=kind)
    for orientation, label in ((Orientation.H, "А"), (Orientation.V, "1")):
        for i in range(rng.randint(1, max_groups)):
            count = rng.randint(2, max_count) if i == 0 else rng.randint(1, max_count)
            step = rng.randrange(1500, 9001, 500)
            start = label if i == 0 else None
            group = AxisGroup(
                id=0,
                orientation=orientation,
                count=count,
                step_mm=step,
                label_start=start or ("Л" if orientation is Orientation.H else "10"),
            )
            m = ops.upsert_axis_group(m, group)
    return m


def add_random_partition(rng: random.Random, m: Model, length: int | None = None):
    """Append one single-segment partition chain; returns the new model."""
    length = length or rng.randrange(1000, 12001, 10)
    x0 = rng.randrange(0, 4001, 10)
    y0 = rng.randrange(0, 4001, 10)
    if rng.random() < 0.5:
        polyline = [(x0, y0), (x0 + length, y0)]
    else:
        polyline = [(x0, y0), (x0, y0 + length)]
    return ops.place_partition_chain(
        m,
        gost_type=rng.choice(list(PartitionType)),
        thickness_mm=rng.choice([80, 120, 250]),
        bearing=rng.random() < 0.3,
        polyline=polyline,
    )
