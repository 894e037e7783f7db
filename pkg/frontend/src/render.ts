/** Pure renderer: (display document, view state) -> draw commands.
 *
 * No canvas access here; the caller replays the commands onto a 2D
 * context (or a test asserts on them). All coordinates are canvas
 * pixels after the view transform.
 */

import type { Primitive } from "./types.js";
import { worldToPointer, type ViewState } from "./view.js";

export type DrawCommand =
  | {
      kind: "line";
      from: [number, number];
      to: [number, number];
      widthPx: number;
      dashed: boolean;
      ghost: boolean;
    }
  | { kind: "circle"; center: [number, number]; rPx: number; ghost: boolean }
  | {
      kind: "arc";
      center: [number, number];
      rPx: number;
      a0Deg: number;
      a1Deg: number;
      ghost: boolean;
    }
  | {
      kind: "text";
      at: [number, number];
      content: string;
      sizePx: number;
      ghost: boolean;
    }
  | { kind: "badge"; at: [number, number]; content: string };

const THIN_MM = 0.2;
const THICK_MM = 0.6;
// Paper line widths are given at 1:100.
const PAPER_SCALE = 100;

function strokeWidthPx(weight: string, zoom: number): number {
  const mm = weight === "thick" ? THICK_MM : THIN_MM;
  return Math.max(mm * PAPER_SCALE * zoom, 1);
}

function primitiveCommands(
  prim: Primitive,
  view: ViewState,
  ghost: boolean,
): DrawCommand[] {
  switch (prim.type) {
    case "segment":
      return [
        {
          kind: "line",
          from: worldToPointer(view, prim.p1[0], prim.p1[1]),
          to: worldToPointer(view, prim.p2[0], prim.p2[1]),
          widthPx: strokeWidthPx(prim.style.weight, view.zoom),
          dashed: prim.style.pattern !== "solid",
          ghost,
        },
      ];
    case "circle":
      return [
        {
          kind: "circle",
          center: worldToPointer(view, prim.center[0], prim.center[1]),
          rPx: prim.r * view.zoom,
          ghost,
        },
      ];
    case "arc":
      return [
        {
          kind: "arc",
          center: worldToPointer(view, prim.center[0], prim.center[1]),
          rPx: prim.r * view.zoom,
          a0Deg: prim.a0_deg,
          a1Deg: prim.a1_deg,
          ghost,
        },
      ];
    case "text":
      return [
        {
          kind: "text",
          at: worldToPointer(view, prim.origin[0], prim.origin[1]),
          content: prim.content,
          sizePx: prim.height_mm * view.zoom,
          ghost,
        },
      ];
    case "dim_linear": {
      // Dimension line parallel to p1->p2, offset to `side`, text at the middle.
      const [x1, y1] = prim.p1;
      const [x2, y2] = prim.p2;
      const len = Math.hypot(x2 - x1, y2 - y1) || 1;
      const nx = (-(y2 - y1) / len) * prim.offset_mm * prim.side;
      const ny = ((x2 - x1) / len) * prim.offset_mm * prim.side;
      const widthPx = strokeWidthPx("thin", view.zoom);
      return [
        {
          kind: "line",
          from: worldToPointer(view, x1 + nx, y1 + ny),
          to: worldToPointer(view, x2 + nx, y2 + ny),
          widthPx,
          dashed: false,
          ghost,
        },
        {
          kind: "line",
          from: worldToPointer(view, x1, y1),
          to: worldToPointer(view, x1 + nx, y1 + ny),
          widthPx,
          dashed: false,
          ghost,
        },
        {
          kind: "line",
          from: worldToPointer(view, x2, y2),
          to: worldToPointer(view, x2 + nx, y2 + ny),
          widthPx,
          dashed: false,
          ghost,
        },
        {
          kind: "text",
          at: worldToPointer(view, (x1 + x2) / 2 + nx, (y1 + y2) / 2 + ny),
          content: prim.text,
          sizePx: 350 * view.zoom,
          ghost,
        },
      ];
    }
    case "axis_bubble":
      return [
        {
          kind: "circle",
          center: worldToPointer(view, prim.center[0], prim.center[1]),
          rPx: prim.r * view.zoom,
          ghost,
        },
        {
          kind: "text",
          at: worldToPointer(view, prim.center[0], prim.center[1]),
          content: prim.label,
          sizePx: prim.r * view.zoom,
          ghost,
        },
      ];
    case "leader": {
      const commands: DrawCommand[] = [];
      const widthPx = strokeWidthPx("thin", view.zoom);
      for (let i = 0; i + 1 < prim.points.length; i++) {
        const a = prim.points[i]!;
        const b = prim.points[i + 1]!;
        commands.push({
          kind: "line",
          from: worldToPointer(view, a[0], a[1]),
          to: worldToPointer(view, b[0], b[1]),
          widthPx,
          dashed: false,
          ghost,
        });
      }
      if (prim.text && prim.points.length > 0) {
        const last = prim.points[prim.points.length - 1]!;
        commands.push({
          kind: "text",
          at: worldToPointer(view, last[0], last[1]),
          content: prim.text,
          sizePx: 350 * view.zoom,
          ghost,
        });
      }
      return commands;
    }
  }
}

export function renderScene(
  primitives: Primitive[],
  view: ViewState,
): DrawCommand[] {
  const commands: DrawCommand[] = [];
  for (const prim of primitives) {
    commands.push(...primitiveCommands(prim, view, false));
  }
  if (view.ghost) {
    for (const prim of view.ghost.primitives) {
      commands.push(...primitiveCommands(prim, view, true));
    }
    if (view.ghost.badge) {
      commands.push({ kind: "badge", at: [0, 0], content: view.ghost.badge });
    }
  }
  return commands;
}
