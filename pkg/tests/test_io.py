import json
import zlib

import pytest

from podosnova import ops
from podosnova.capsule import decode_capsule, encode_capsule
from podosnova.displaydoc import display_to_doc, display_to_json
from podosnova.drafting import generate_plan_display
from podosnova.dxf import emit_dxf
from podosnova.errors import BadMagic, CorruptBody, SchemaError, VersionUnsupported
from podosnova.svg import emit_svg
from podosnova.textdoc import load_text, model_to_doc, save_text


def test_text_roundtrip(ref_model):
    text = save_text(ref_model)
    loaded = load_text(text)
    assert loaded.entity_lists() == ref_model.entity_lists()
    assert loaded.axis_groups_h == ref_model.axis_groups_h
    assert loaded.axis_groups_v == ref_model.axis_groups_v
    assert loaded.settings == ref_model.settings
    assert loaded.next_id == ref_model.next_id


def test_text_is_canonical(ref_model):
    text = save_text(ref_model)
    assert text == save_text(load_text(text))
    assert text.endswith("\n")
    doc = json.loads(text)
    assert list(doc) == sorted(doc)


def test_load_text_rejects_bad_documents(ref_model):
    with pytest.raises(SchemaError):
        load_text("not json")
    with pytest.raises(SchemaError):
        load_text("{}")
    doc = model_to_doc(ref_model)
    doc["version"] = 99
    with pytest.raises(SchemaError):
        load_text(json.dumps(doc))
    doc = model_to_doc(ref_model)
    doc["kind"] = "attic"
    with pytest.raises(SchemaError):
        load_text(json.dumps(doc))


def test_schema_error_carries_path(ref_model):
    doc = model_to_doc(ref_model)
    del doc["axis_groups_h"][0]["count"]
    with pytest.raises(SchemaError) as exc:
        load_text(json.dumps(doc))
    assert "axis_groups_h" in exc.value.path


def test_capsule_roundtrip(ref_model):
    blob = encode_capsule(ref_model)
    model, stub = decode_capsule(blob)
    assert save_text(model) == save_text(ref_model)
    assert stub.primitives


def test_capsule_header_checks(ref_model):
    blob = bytearray(encode_capsule(ref_model))
    with pytest.raises(BadMagic):
        decode_capsule(b"XXXX" + bytes(blob[4:]))
    bad_version = bytes(blob[:4]) + b"\x63\x00" + bytes(blob[6:])
    with pytest.raises(VersionUnsupported):
        decode_capsule(bad_version)
    blob[-1] ^= 0xFF
    with pytest.raises(CorruptBody):
        decode_capsule(bytes(blob))
    with pytest.raises(CorruptBody):
        decode_capsule(bytes(blob[:20]))  # header intact, body truncated


def test_capsule_is_deterministic(ref_model):
    assert encode_capsule(ref_model) == encode_capsule(ref_model)


def test_capsule_body_is_raw_deflate(ref_model):
    blob = encode_capsule(ref_model)
    zlib.decompress(blob[14:], wbits=-15)


def test_stub_shows_axes_and_dims(ref_model):
    from podosnova.drafting import AxisBubble, DimLinear

    _, stub = decode_capsule(encode_capsule(ref_model))
    labels = {p.label for p in stub.primitives if isinstance(p, AxisBubble)}
    assert "А" in labels and "1" in labels
    dims = [p for p in stub.primitives if isinstance(p, DimLinear)]
    assert 1 <= len(dims) <= 2


# ------------------------------------------------------------------ exports

def test_svg_structure(ref_model):
    svg = emit_svg(generate_plan_display(ref_model))
    assert svg.startswith("<?xml")
    assert 'version="1.1"' in svg
    assert "<line" in svg and "<circle" in svg and "<text" in svg
    assert "stroke-dasharray" in svg  # axis lines


def test_svg_scale_changes_size(ref_model):
    dl = generate_plan_display(ref_model)
    assert emit_svg(dl, 100) != emit_svg(dl, 50)


def test_dxf_structure(ref_model):
    dxf = emit_dxf(generate_plan_display(ref_model))
    assert dxf.startswith("0\nSECTION")
    assert dxf.rstrip("\n").endswith("0\nEOF")
    assert "AC1009" in dxf
    assert "\nLINE\n" in dxf and "\nCIRCLE\n" in dxf and "\nTEXT\n" in dxf
    assert "DIMENSION" not in dxf  # dimensions ship exploded


def test_dxf_ascii_transliteration(ref_model):
    dxf = emit_dxf(generate_plan_display(ref_model), ascii_labels=True)
    assert all(ord(c) < 128 for c in dxf)


def test_display_doc_json(ref_model):
    dl = generate_plan_display(ref_model)
    doc = display_to_doc(dl)
    assert len(doc["primitives"]) == len(dl.primitives)
    assert set(doc["bbox"]) if isinstance(doc["bbox"], dict) else len(doc["bbox"]) == 4
    json.loads(display_to_json(dl))


# ------------------------------------------------------------------- goldens

def _golden(name: str) -> str:
    from pathlib import Path

    return (Path(__file__).parent / "goldens" / name).read_text(encoding="utf-8")


def test_svg_golden(ref_model):
    assert emit_svg(generate_plan_display(ref_model)) == _golden("reference.svg")


def test_dxf_golden(ref_model):
    assert emit_dxf(generate_plan_display(ref_model)) == _golden("reference.dxf")
