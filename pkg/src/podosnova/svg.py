"""SVG 1.1 emitter for display lists.

One SVG user unit equals one paper millimeter; world millimeters divide
by the scale denominator (1:100 by default). The Y axis is flipped so
world +Y points up. Output is byte-deterministic for equal inputs.
"""

from __future__ import annotations

import math

from .drafting import (
    Arc,
    AxisBubble,
    Circle,
    DimLinear,
    DisplayList,
    Leader,
    Pattern,
    Segment,
    Style,
    TextPrim,
    Weight,
    explode_bubble,
    explode_dimension,
    explode_leader,
)

MARGIN_PAPER_MM = 10.0
THIN_STROKE_MM = 0.2
THICK_STROKE_MM = 0.6

_DASH = {
    Pattern.SOLID: None,
    Pattern.DASHED: "2,1",
    Pattern.AXIS_DASH_DOT: "8,1.5,0.5,1.5",
}


def _fmt(value: float) -> str:
    text = f"{value:.3f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def _stroke_attrs(style: Style) -> str:
    width = THICK_STROKE_MM if style.weight is Weight.THICK else THIN_STROKE_MM
    attrs = f'stroke="black" stroke-width="{_fmt(width)}" fill="none"'
    dash = _DASH[style.pattern]
    if dash:
        attrs += f' stroke-dasharray="{dash}"'
    return attrs


def emit_svg(dl: DisplayList, scale: int = 100) -> str:
    if scale <= 0:
        raise ValueError("scale denominator must be positive")
    x0, y0, x1, y1 = dl.bounding_box()

    def tx(x: float) -> float:
        return (x - x0) / scale + MARGIN_PAPER_MM

    def ty(y: float) -> float:
        return (y1 - y) / scale + MARGIN_PAPER_MM

    width = (x1 - x0) / scale + 2 * MARGIN_PAPER_MM
    height = (y1 - y0) / scale + 2 * MARGIN_PAPER_MM

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}mm" height="{_fmt(height)}mm" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        "<g>",
    ]

    def emit(prim) -> None:
        if isinstance(prim, Segment):
            lines.append(
                f'<line x1="{_fmt(tx(prim.p1[0]))}" y1="{_fmt(ty(prim.p1[1]))}" '
                f'x2="{_fmt(tx(prim.p2[0]))}" y2="{_fmt(ty(prim.p2[1]))}" '
                f"{_stroke_attrs(prim.style)}/>"
            )
        elif isinstance(prim, Circle):
            lines.append(
                f'<circle cx="{_fmt(tx(prim.center[0]))}" cy="{_fmt(ty(prim.center[1]))}" '
                f'r="{_fmt(prim.r / scale)}" {_stroke_attrs(prim.style)}/>'
            )
        elif isinstance(prim, Arc):
            a0 = math.radians(prim.a0_deg)
            a1 = math.radians(prim.a1_deg)
            sx = tx(prim.center[0] + prim.r * math.cos(a0))
            sy = ty(prim.center[1] + prim.r * math.sin(a0))
            ex = tx(prim.center[0] + prim.r * math.cos(a1))
            ey = ty(prim.center[1] + prim.r * math.sin(a1))
            sweep = prim.a1_deg - prim.a0_deg
            large = 1 if abs(sweep) > 180 else 0
            # Y flip inverts the sweep sense.
            flag = 0 if sweep > 0 else 1
            lines.append(
                f'<path d="M {_fmt(sx)} {_fmt(sy)} A {_fmt(prim.r / scale)} '
                f'{_fmt(prim.r / scale)} 0 {large} {flag} {_fmt(ex)} {_fmt(ey)}" '
                f"{_stroke_attrs(prim.style)}/>"
            )
        elif isinstance(prim, TextPrim):
            content = (
                prim.content.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            )
            lines.append(
                f'<text x="{_fmt(tx(prim.origin[0]))}" y="{_fmt(ty(prim.origin[1]))}" '
                f'font-size="{_fmt(prim.height_mm / scale)}" '
                f'font-family="sans-serif">{content}</text>'
            )
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

    for prim in dl.primitives:
        emit(prim)

    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
