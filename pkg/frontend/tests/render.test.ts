import { describe, expect, it } from "vitest";

import { renderScene } from "../src/render.js";
import { makeView } from "../src/view.js";
import type { Primitive } from "../src/types.js";

const thin = { weight: "thin", pattern: "solid" };

const scene: Primitive[] = [
  { type: "segment", p1: [0, 0], p2: [6000, 0], style: thin },
  {
    type: "segment",
    p1: [0, 0],
    p2: [0, 6000],
    style: { weight: "thick", pattern: "dashed" },
  },
  { type: "axis_bubble", center: [-1500, 0], r: 525, label: "А" },
  {
    type: "dim_linear",
    p1: [0, 0],
    p2: [6000, 0],
    offset_mm: 1000,
    text: "6000",
    side: 1,
  },
  { type: "text", origin: [100, 200], height_mm: 350, content: "note" },
];

describe("renderScene", () => {
  it("is a pure function of display list and view", () => {
    const view = makeView({ zoom: 0.1 });
    expect(renderScene(scene, view)).toEqual(renderScene(scene, view));
  });

  it("maps world geometry through the view transform", () => {
    const view = makeView({ panX: -1000, panY: 2000, zoom: 0.1 });
    const [line] = renderScene([scene[0]!], view);
    expect(line).toMatchObject({
      kind: "line",
      from: [100, 200],
      to: [700, 200],
      dashed: false,
    });
  });

  it("thick strokes render wider than thin ones", () => {
    const view = makeView({ zoom: 0.5 });
    const [thinLine, thickLine] = renderScene(scene.slice(0, 2), view);
    if (thinLine?.kind !== "line" || thickLine?.kind !== "line") {
      throw new Error("expected two lines");
    }
    expect(thickLine.widthPx).toBeGreaterThan(thinLine.widthPx);
    expect(thickLine.dashed).toBe(true);
  });

  it("explodes dimensions into three lines and a label", () => {
    const view = makeView({ zoom: 1 });
    const commands = renderScene([scene[3]!], view);
    expect(commands.filter((c) => c.kind === "line")).toHaveLength(3);
    const label = commands.find((c) => c.kind === "text");
    expect(label).toMatchObject({ content: "6000" });
  });

  it("appends ghost primitives flagged as ghost, plus the badge", () => {
    const view = makeView({
      zoom: 0.1,
      ghost: { primitives: [scene[0]!], badge: "2" },
    });
    const commands = renderScene(scene.slice(0, 1), view);
    expect(commands.filter((c) => c.kind === "line")).toHaveLength(2);
    expect(commands.some((c) => "ghost" in c && c.ghost)).toBe(true);
    expect(commands.at(-1)).toMatchObject({ kind: "badge", content: "2" });
  });

  it("keeps hairlines at least one pixel wide when zoomed out", () => {
    const view = makeView({ zoom: 0.001 });
    const [line] = renderScene([scene[0]!], view);
    if (line?.kind !== "line") throw new Error("expected a line");
    expect(line.widthPx).toBeGreaterThanOrEqual(1);
  });
});
