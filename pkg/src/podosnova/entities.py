"""Parametric representation of a structural base plan.

All lengths are integer millimeters at natural scale. World frame: X to
the right, Y up; horizontal axes run parallel to X (their coordinate is
a Y value), vertical axes parallel to Y (coordinate is an X value).

Entities are frozen dataclasses: mutation operations replace entities
inside a cloned Model rather than editing them in place, so snapshots
stay cheap and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterator

# GOST axis lettering series: З, Й, О, Х, Ц, Ч, Щ, Ъ, Ы, Ь are skipped.
DEFAULT_LETTER_ALPHABET = "АБВГДЕЖИКЛМНПРСТУФШЭЮЯ"

MAX_AXES_PER_GROUP = 99


class PlanKind(str, Enum):
    FLOOR = "floor"
    CEILING = "ceiling"
    FOUNDATION = "foundation"


class Orientation(str, Enum):
    H = "h"
    V = "v"


class PartitionType(str, Enum):
    ORDINARY = "ordinary"
    PANEL_SHIELD = "panel_shield"
    GLASS_BLOCK = "glass_block"
    GLAZED1 = "glazed1"
    GLAZED2 = "glazed2"
    BRICK = "brick"


class Seat(str, Enum):
    CENTER = "center"
    LEFT_EDGE = "left_edge"
    RIGHT_EDGE = "right_edge"


UNMARKED_COLUMN_TYPES = (
    "rc-plain",
    "rc-1console",
    "rc-2console",
    "metal-plain",
    "metal-1branch",
    "metal-2branch",
)


@dataclass(frozen=True)
class ModelSettings:
    axis_label_offset_mm: int = 1500
    dim_offset_mm: int = 1000
    horiz_axes_lettered: bool = True
    horiz_dims_above: bool = True
    gen_font_height_mm: int = 350
    beam_span_tolerance_mm: int = 500
    letter_alphabet: str = DEFAULT_LETTER_ALPHABET

    def validate(self) -> None:
        if self.axis_label_offset_mm <= 0 or self.dim_offset_mm <= 0:
            raise ValueError("offsets must be positive")
        if self.gen_font_height_mm <= 0:
            raise ValueError("font height must be positive")
        if self.beam_span_tolerance_mm < 0:
            raise ValueError("beam span tolerance must be non-negative")
        if not self.letter_alphabet:
            raise ValueError("letter alphabet must be non-empty")
        if len(set(self.letter_alphabet)) != len(self.letter_alphabet):
            raise ValueError("letter alphabet characters must be distinct")


@dataclass(frozen=True)
class Anchor:
    """Reference to a grid node plus an offset from it, both in mm."""

    h_axis: int
    v_axis: int
    dx_mm: int = 0
    dy_mm: int = 0


@dataclass(frozen=True)
class AxisGroup:
    id: int
    orientation: Orientation
    count: int
    label_start: str = "1"
    step_mm: int | None = None        # set for main groups
    base_axis: int | None = None      # set for additional groups
    offset_mm: int | None = None      # set for additional groups

    @property
    def is_main(self) -> bool:
        return self.step_mm is not None


@dataclass(frozen=True)
class ColumnGroup:
    id: int
    start: Anchor
    end: Anchor
    mark: str | None = None
    unmarked_type: str | None = None
    console_len_mm: int | None = None
    console_left: bool = False
    center_dx_mm: int = 0
    center_dy_mm: int = 0
    width_mm: int = 400
    thickness_mm: int = 400
    along_x: bool = True
    is_new: bool = True


@dataclass(frozen=True)
class Partition:
    id: int
    chain_id: int
    gost_type: PartitionType
    thickness_mm: int
    length_mm: int
    anchor: Anchor
    bearing: bool = False
    along_x: bool = True
    is_new: bool = True


@dataclass(frozen=True)
class LintelSpec:
    mark: str | None
    length_mm: int
    width_mm: int
    height_mm: int


@dataclass(frozen=True)
class TransomSpec:
    mark: str | None
    thickness_mm: int
    width_mm: int
    height_mm: int


@dataclass(frozen=True)
class OpeningSectionExtra:
    sill_height_mm: int
    opening_height_mm: int
    lintel: LintelSpec | None = None
    transom: TransomSpec | None = None


@dataclass(frozen=True)
class Opening:
    id: int
    partition_id: int
    gost_type: int               # GOST 21.107-78 variant, 1..19
    width_mm: int
    height_mm: int
    anchor_offset_mm: int
    mark: str | None = None
    along_x: bool = True
    rot180: bool = False
    is_new: bool = True
    section_extra: OpeningSectionExtra | None = None


@dataclass(frozen=True)
class ColumnRef:
    group_id: int
    ix: int
    iy: int


@dataclass(frozen=True)
class FootingRef:
    group_id: int
    ix: int
    iy: int


@dataclass(frozen=True)
class Beam:
    id: int
    length_mm: int
    width_mm: int
    height_mm: int
    anchor: Anchor
    end_a: ColumnRef
    end_b: ColumnRef
    mark: str | None = None
    along_x: bool = True
    is_new: bool = True


@dataclass(frozen=True)
class SlabGroup:
    id: int
    length_mm: int
    width_mm: int
    height_mm: int
    anchor: Anchor
    count: int = 1
    mark: str | None = None
    along_x: bool = True
    is_new: bool = True


@dataclass(frozen=True)
class StripFoundation:
    id: int
    chain_id: int
    width_mm: int
    length_mm: int
    anchor: Anchor
    along_x: bool = True
    is_new: bool = True


@dataclass(frozen=True)
class FootingGroup:
    id: int
    start: Anchor
    end: Anchor
    length_mm: int
    width_mm: int
    height_mm: int
    mark: str | None = None
    center_dx_mm: int = 0
    center_dy_mm: int = 0
    along_x: bool = True
    is_new: bool = True


@dataclass(frozen=True)
class FoundationBeam:
    id: int
    length_mm: int
    width_mm: int
    height_mm: int
    anchor: Anchor
    end_a: FootingRef
    end_b: FootingRef
    seat_a: Seat = Seat.CENTER
    mark: str | None = None
    along_x: bool = True
    is_new: bool = True


@dataclass(frozen=True)
class TextNote:
    id: int
    lines: str
    origin: tuple[int, int]
    leader_target: tuple[int, int]
    font_height_mm: int = 350
    line_step_mm: int = 500


Entity = (
    AxisGroup
    | ColumnGroup
    | Partition
    | Opening
    | Beam
    | SlabGroup
    | StripFoundation
    | FootingGroup
    | FoundationBeam
    | TextNote
)

ENTITY_LIST_FIELDS = (
    "column_groups",
    "partitions",
    "openings",
    "beams",
    "slab_groups",
    "strip_foundations",
    "footing_groups",
    "foundation_beams",
    "texts",
)

# Which entity lists each plan kind may populate (axis groups and texts
# are allowed everywhere).
PERMITTED_LISTS = {
    PlanKind.FLOOR: frozenset({"column_groups", "partitions", "openings", "texts"}),
    PlanKind.CEILING: frozenset(
        {"column_groups", "partitions", "beams", "slab_groups", "texts"}
    ),
    PlanKind.FOUNDATION: frozenset(
        {"strip_foundations", "footing_groups", "foundation_beams", "texts"}
    ),
}


@dataclass
class Model:
    kind: PlanKind = PlanKind.FLOOR
    settings: ModelSettings = field(default_factory=ModelSettings)
    axis_groups_h: list[AxisGroup] = field(default_factory=list)
    axis_groups_v: list[AxisGroup] = field(default_factory=list)
    column_groups: list[ColumnGroup] = field(default_factory=list)
    partitions: list[Partition] = field(default_factory=list)
    openings: list[Opening] = field(default_factory=list)
    beams: list[Beam] = field(default_factory=list)
    slab_groups: list[SlabGroup] = field(default_factory=list)
    strip_foundations: list[StripFoundation] = field(default_factory=list)
    footing_groups: list[FootingGroup] = field(default_factory=list)
    foundation_beams: list[FoundationBeam] = field(default_factory=list)
    texts: list[TextNote] = field(default_factory=list)
    next_id: int = 1

    def clone(self) -> "Model":
        return Model(
            kind=self.kind,
            settings=self.settings,
            axis_groups_h=list(self.axis_groups_h),
            axis_groups_v=list(self.axis_groups_v),
            column_groups=list(self.column_groups),
            partitions=list(self.partitions),
            openings=list(self.openings),
            beams=list(self.beams),
            slab_groups=list(self.slab_groups),
            strip_foundations=list(self.strip_foundations),
            footing_groups=list(self.footing_groups),
            foundation_beams=list(self.foundation_beams),
            texts=list(self.texts),
            next_id=self.next_id,
        )

    def take_id(self) -> int:
        """Reserve and return the next entity id (mutates next_id)."""
        i = self.next_id
        self.next_id = i + 1
        return i

    def axis_groups(self, orientation: Orientation) -> list[AxisGroup]:
        return self.axis_groups_h if orientation is Orientation.H else self.axis_groups_v

    def entity_lists(self) -> dict[str, list]:
        return {name: getattr(self, name) for name in ENTITY_LIST_FIELDS}

    def iter_entities(self) -> Iterator[Entity]:
        """All entities (axis groups first), ids ascending within each list."""
        yield from sorted(self.axis_groups_h, key=lambda g: g.id)
        yield from sorted(self.axis_groups_v, key=lambda g: g.id)
        for name in ENTITY_LIST_FIELDS:
            yield from sorted(getattr(self, name), key=lambda e: e.id)

    def find_entity(self, entity_id: int) -> tuple[str, Entity] | None:
        """Locate an entity by id; returns (list name, entity) or None."""
        for group in self.axis_groups_h:
            if group.id == entity_id:
                return "axis_groups_h", group
        for group in self.axis_groups_v:
            if group.id == entity_id:
                return "axis_groups_v", group
        for name in ENTITY_LIST_FIELDS:
            for entity in getattr(self, name):
                if entity.id == entity_id:
                    return name, entity
        return None

    def partition_by_id(self, partition_id: int) -> Partition | None:
        for p in self.partitions:
            if p.id == partition_id:
                return p
        return None

    def column_group_by_id(self, group_id: int) -> ColumnGroup | None:
        for g in self.column_groups:
            if g.id == group_id:
                return g
        return None

    def footing_group_by_id(self, group_id: int) -> FootingGroup | None:
        for g in self.footing_groups:
            if g.id == group_id:
                return g
        return None


def replace_in_list(items: list, entity_id: int, new_entity) -> list:
    return [new_entity if e.id == entity_id else e for e in items]


def entity_anchors(entity: Entity) -> list[Anchor]:
    """All anchors carried by an entity (empty for axis groups and texts)."""
    anchors = []
    for attr in ("anchor", "start", "end"):
        value = getattr(entity, attr, None)
        if isinstance(value, Anchor):
            anchors.append(value)
    return anchors


def with_replaced_anchors(entity: Entity, mapping) -> Entity:
    """Rewrite the entity's anchors through `mapping(anchor) -> anchor`."""
    changes = {}
    for attr in ("anchor", "start", "end"):
        value = getattr(entity, attr, None)
        if isinstance(value, Anchor):
            changes[attr] = mapping(value)
    return replace(entity, **changes) if changes else entity
