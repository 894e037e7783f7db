"""GOST-style construction mark catalog.

A mark string names a standard element and carries its dimensions in a
parenthetical, e.g. ``"ОР 15-6 (1460 x 570)"`` or
``"2ПБ19-3-п (1940 x 120 x 140, 0.033)"``. The optional trailing token
after the comma is usually a volume/mass metric; a few marks carry a
non-numeric suffix there instead (kept verbatim as ``trailer``).

Catalog data files are UTF-8, line-oriented, tab-separated:
``family TAB markstring TAB note [TAB bearing]`` where the optional
bearing column (columns only) lists the directions beams may rest on,
``x``, ``y`` or ``xy``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import ParseError

UNMARKED_PREFIX = "Немаркированн"


class MarkFamily(str, Enum):
    COLUMN = "column"
    OPENING = "opening"
    LINTEL = "lintel"
    TRANSOM = "transom"
    BEAM = "beam"
    SLAB = "slab"
    FOOTING = "footing"
    FOUNDATION_BEAM = "foundation_beam"


class Unmarked:
    """Sentinel for mark strings starting with the unmarked prefix."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Unmarked"


UNMARKED = Unmarked()


@dataclass(frozen=True)
class ParsedMark:
    name: str
    dims_mm: tuple[int, ...]
    metric: Decimal | None = None
    trailer: str | None = None


@dataclass(frozen=True)
class MarkRecord:
    family: MarkFamily
    name: str
    dims_mm: tuple[int, ...]
    metric: Decimal | None = None
    trailer: str | None = None
    series_note: str = ""
    bearing: str | None = None  # columns only: "x", "y" or "xy"


_DIM_SEPARATORS = ("x", "х", "×")  # latin x, cyrillic х, times sign
_METRIC_RE = re.compile(r"^\d+(\.\d+)?$")


def _byte_offset(text: str, char_index: int) -> int:
    return len(text[:char_index].encode("utf-8"))


def parse_mark_string(text: str) -> ParsedMark | Unmarked:
    stripped = text.strip()
    if stripped.startswith(UNMARKED_PREFIX):
        return UNMARKED

    open_ix = text.find("(")
    if open_ix < 0:
        raise ParseError("missing parenthetical", _byte_offset(text, len(text)))
    name = text[:open_ix].strip()
    if not name:
        raise ParseError("empty mark name", 0)

    close_ix = text.rfind(")")
    if close_ix < open_ix or text[close_ix + 1 :].strip():
        raise ParseError("unterminated parenthetical", _byte_offset(text, open_ix))
    inner = text[open_ix + 1 : close_ix]

    dims_part, _, tail = inner.partition(",")
    pieces = [dims_part]
    for sep in _DIM_SEPARATORS:
        pieces = [frag for piece in pieces for frag in piece.split(sep)]
    if len(pieces) not in (2, 3):
        raise ParseError(
            f"expected 2 or 3 dimensions, got {len(pieces)}",
            _byte_offset(text, open_ix + 1),
        )
    dims = []
    for piece in pieces:
        token = piece.strip()
        if not token.isdigit() or int(token) <= 0:
            raise ParseError(
                f"bad dimension {token!r}",
                _byte_offset(text, open_ix + 1 + inner.find(piece)),
            )
        dims.append(int(token))

    metric: Decimal | None = None
    trailer: str | None = None
    tail = tail.strip()
    if tail:
        if _METRIC_RE.match(tail):
            metric = Decimal(tail)
        else:
            trailer = tail

    return ParsedMark(name=name, dims_mm=tuple(dims), metric=metric, trailer=trailer)


def render_mark_string(record: ParsedMark | MarkRecord) -> str:
    dims = " x ".join(str(d) for d in record.dims_mm)
    tail = ""
    if record.metric is not None:
        tail = f", {record.metric}"
    elif record.trailer:
        tail = f", {record.trailer}"
    return f"{record.name} ({dims}{tail})"


@dataclass
class Catalog:
    records: dict[MarkFamily, list[MarkRecord]] = field(
        default_factory=lambda: {family: [] for family in MarkFamily}
    )

    def add(self, record: MarkRecord) -> None:
        if any(r.name == record.name for r in self.records[record.family]):
            raise ValueError(f"duplicate mark {record.name!r} in {record.family.value}")
        self.records[record.family].append(record)

    def family(self, family: MarkFamily) -> list[MarkRecord]:
        return list(self.records[family])

    def lookup(self, family: MarkFamily, name: str) -> MarkRecord | None:
        for record in self.records[family]:
            if record.name == name:
                return record
        return None

    def iter_records(self):
        for family in MarkFamily:
            yield from self.records[family]


def load_catalog_file(path: str | Path, catalog: Catalog | None = None) -> Catalog:
    catalog = catalog or Catalog()
    text = Path(path).read_text(encoding="utf-8")
    _load_catalog_text(text, catalog)
    return catalog


def _load_catalog_text(text: str, catalog: Catalog) -> None:
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) < 2:
            raise ParseError(f"line {lineno}: expected at least 2 tab-separated fields")
        family = MarkFamily(fields[0].strip())
        parsed = parse_mark_string(fields[1])
        if parsed is UNMARKED:
            continue
        note = fields[2].strip() if len(fields) > 2 else ""
        bearing = fields[3].strip() if len(fields) > 3 else None
        catalog.add(
            MarkRecord(
                family=family,
                name=parsed.name,
                dims_mm=parsed.dims_mm,
                metric=parsed.metric,
                trailer=parsed.trailer,
                series_note=note,
                bearing=bearing or None,
            )
        )


@lru_cache(maxsize=1)
def default_catalog() -> Catalog:
    catalog = Catalog()
    data = resources.files("podosnova").joinpath("data/marks.tsv").read_text("utf-8")
    _load_catalog_text(data, catalog)
    return catalog
