"""ASCII DXF R12 emitter (ENTITIES only, LF line endings).

Dimensions, axis bubbles and leaders are exploded into LINE, CIRCLE,
ARC and TEXT entities. Coordinates are paper millimeters (world divided
by the scale denominator). An optional transliteration flag folds
Cyrillic labels to 7-bit ASCII for consumers without UTF-8 support.
"""

from __future__ import annotations

from .drafting import (
    Arc,
    AxisBubble,
    Circle,
    DimLinear,
    DisplayList,
    Leader,
    Segment,
    TextPrim,
    explode_bubble,
    explode_dimension,
    explode_leader,
)

_TRANSLIT = {
    "А": "A", "Б": "B", "В": "V", "Г": "G", "Д": "D", "Е": "E", "Ж": "Zh",
    "З": "Z", "И": "I", "Й": "J", "К": "K", "Л": "L", "М": "M", "Н": "N",
    "О": "O", "П": "P", "Р": "R", "С": "S", "Т": "T", "У": "U", "Ф": "F",
    "Х": "Kh", "Ц": "Ts", "Ч": "Ch", "Ш": "Sh", "Щ": "Shch", "Ъ": "",
    "Ы": "Y", "Ь": "", "Э": "E", "Ю": "Yu", "Я": "Ya", "±": "+-", "−": "-",
}
_TRANSLIT.update({k.lower(): v.lower() for k, v in _TRANSLIT.items()})


def transliterate(text: str) -> str:
    return "".join(_TRANSLIT.get(ch, ch) for ch in text)


def _fmt(value: float) -> str:
    text = f"{value:.4f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def emit_dxf(dl: DisplayList, scale: int = 100, ascii_labels: bool = False) -> str:
    if scale <= 0:
        raise ValueError("scale denominator must be positive")
    out: list[str] = []

    def tag(code: int, value: str) -> None:
        out.append(str(code))
        out.append(value)

    def line(p1, p2) -> None:
        tag(0, "LINE")
        tag(8, "0")
        tag(10, _fmt(p1[0] / scale))
        tag(20, _fmt(p1[1] / scale))
        tag(11, _fmt(p2[0] / scale))
        tag(21, _fmt(p2[1] / scale))

    def emit(prim) -> None:
        if isinstance(prim, Segment):
            line(prim.p1, prim.p2)
        elif isinstance(prim, Circle):
            tag(0, "CIRCLE")
            tag(8, "0")
            tag(10, _fmt(prim.center[0] / scale))
            tag(20, _fmt(prim.center[1] / scale))
            tag(40, _fmt(prim.r / scale))
        elif isinstance(prim, Arc):
            a0, a1 = sorted((prim.a0_deg, prim.a1_deg))
            tag(0, "ARC")
            tag(8, "0")
            tag(10, _fmt(prim.center[0] / scale))
            tag(20, _fmt(prim.center[1] / scale))
            tag(40, _fmt(prim.r / scale))
            tag(50, _fmt(a0))
            tag(51, _fmt(a1))
        elif isinstance(prim, TextPrim):
            content = transliterate(prim.content) if ascii_labels else prim.content
            tag(0, "TEXT")
            tag(8, "0")
            tag(10, _fmt(prim.origin[0] / scale))
            tag(20, _fmt(prim.origin[1] / scale))
            tag(40, _fmt(prim.height_mm / scale))
            tag(1, content)
        elif isinstance(prim, DimLinear):
            for part in explode_dimension(prim):
                emit(part)
        elif isinstance(prim, AxisBubble):
            for part in explode_bubble(prim):
                emit(part)
        elif isinstance(prim, Leader):
            for part in explode_leader(prim):
                emit(part)
        else:
            raise TypeError(f"unknown primitive {type(prim).__name__}")

    tag(0, "SECTION")
    tag(2, "HEADER")
    tag(9, "$ACADVER")
    tag(1, "AC1009")
    tag(0, "ENDSEC")
    tag(0, "SECTION")
    tag(2, "ENTITIES")
    for prim in dl.primitives:
        emit(prim)
    tag(0, "ENDSEC")
    tag(0, "EOF")
    return "\n".join(out) + "\n"
