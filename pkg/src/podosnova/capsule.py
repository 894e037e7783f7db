"""Compact binary capsules (`.podo`).

Layout: magic "PODO", u16 version, u32 compressed body length, u32 CRC32
of the compressed body, then the raw-deflate body. The body is a run of
little-endian length-prefixed records (u8 tag, u32 length, payload);
each record carries one section of the model document as compact JSON.
Compression uses a fixed strategy so capsules are byte-deterministic.

Decoding returns the model plus its visible stub: the first X and Y axis
segments with their labels and up to two span dimensions.
"""

from __future__ import annotations

import json
import struct
import zlib

from .drafting import (
    AXIS_STYLE,
    AxisBubble,
    DisplayList,
    Segment,
    bubble_radius,
    generate_span_dimensions,
)
from .entities import Model, Orientation
from .errors import BadMagic, CorruptBody, TooFewAxes, VersionUnsupported
from .textdoc import doc_to_model, model_to_doc

MAGIC = b"PODO"
VERSION = 1
_HEADER = struct.Struct("<4sHII")

_SECTION_TAGS = [
    (1, "kind"),
    (2, "settings"),
    (3, "axis_groups_h"),
    (4, "axis_groups_v"),
    (5, "column_groups"),
    (6, "partitions"),
    (7, "openings"),
    (8, "beams"),
    (9, "slab_groups"),
    (10, "strip_foundations"),
    (11, "footing_groups"),
    (12, "foundation_beams"),
    (13, "texts"),
    (14, "next_id"),
]
_TAG_TO_KEY = dict(_SECTION_TAGS)


def encode_capsule(model: Model) -> bytes:
    doc = model_to_doc(model)
    body = bytearray()
    for tag, key in _SECTION_TAGS:
        payload = json.dumps(
            doc[key], ensure_ascii=False, sort_keys=True, separators=(",", ":")
        ).encode("utf-8")
        body += struct.pack("<BI", tag, len(payload))
        body += payload
    compressor = zlib.compressobj(9, zlib.DEFLATED, -15)
    compressed = compressor.compress(bytes(body)) + compressor.flush()
    header = _HEADER.pack(MAGIC, VERSION, len(compressed), zlib.crc32(compressed))
    return header + compressed


def decode_capsule(data: bytes) -> tuple[Model, DisplayList]:
    if len(data) < _HEADER.size or data[:4] != MAGIC:
        raise BadMagic("not a podosnova capsule")
    magic, version, body_len, crc = _HEADER.unpack(data[: _HEADER.size])
    if version != VERSION:
        raise VersionUnsupported(f"capsule version {version} unsupported")
    compressed = data[_HEADER.size :]
    if len(compressed) != body_len or zlib.crc32(compressed) != crc:
        raise CorruptBody("capsule body length or checksum mismatch")
    try:
        body = zlib.decompress(compressed, -15)
    except zlib.error as exc:
        raise CorruptBody(f"capsule body does not inflate: {exc}")

    doc = {"format": "podo-model", "version": 1}
    pos = 0
    while pos < len(body):
        if pos + 5 > len(body):
            raise CorruptBody("truncated record header")
        tag, length = struct.unpack_from("<BI", body, pos)
        pos += 5
        if pos + length > len(body):
            raise CorruptBody("truncated record payload")
        key = _TAG_TO_KEY.get(tag)
        if key is None:
            raise CorruptBody(f"unknown record tag {tag}")
        doc[key] = json.loads(body[pos : pos + length].decode("utf-8"))
        pos += length

    model = doc_to_model(doc)
    return model, capsule_stub(model)


def capsule_stub(model: Model) -> DisplayList:
    """Visible stub: the first axis of each orientation drawn as a short
    labeled segment, plus the first span dimension per orientation."""
    from .axes import resolve_axes

    dl = DisplayList()
    ext = model.settings.axis_label_offset_mm
    r = bubble_radius(model)
    h_axes = resolve_axes(model, Orientation.H)
    v_axes = resolve_axes(model, Orientation.V)
    stub_len = 4 * ext
    if h_axes:
        y = h_axes[0].coordinate_mm
        dl.primitives.append(Segment((-ext, y), (stub_len, y), AXIS_STYLE))
        dl.primitives.append(AxisBubble((-ext - r, y), r, h_axes[0].label))
    if v_axes:
        x = v_axes[0].coordinate_mm
        dl.primitives.append(Segment((x, -ext), (x, stub_len), AXIS_STYLE))
        dl.primitives.append(AxisBubble((x, -ext - r), r, v_axes[0].label))
    for orientation in Orientation:
        try:
            dims = generate_span_dimensions(model, orientation)
        except TooFewAxes:
            continue
        if dims:
            dl.primitives.append(dims[0])
    return dl
