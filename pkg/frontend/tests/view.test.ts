import { describe, expect, it } from "vitest";

import {
  fitView,
  makeView,
  panBy,
  pointerToWorld,
  worldToPointer,
  zoomAt,
} from "../src/view.js";

describe("view transform", () => {
  it("identity view maps canvas origin to world origin", () => {
    const view = makeView({ zoom: 1 });
    expect(pointerToWorld(view, 0, 0)).toEqual([0, 0]);
  });

  it("rejects non-positive zoom", () => {
    expect(() => makeView({ zoom: 0 })).toThrow();
    expect(() => makeView({ zoom: -2 })).toThrow();
  });

  it("flips Y between canvas and world", () => {
    const view = makeView({ zoom: 1 });
    const [, wy] = pointerToWorld(view, 0, 100);
    expect(wy).toBe(-100);
  });

  it("round trips pixel -> world -> pixel within 0.5 px", () => {
    const view = makeView({ panX: -3712.5, panY: 19211.25, zoom: 0.037 });
    for (const [px, py] of [
      [0, 0],
      [13, 980],
      [1919, 1079],
      [640.5, 359.25],
    ] as const) {
      const [wx, wy] = pointerToWorld(view, px, py);
      const [bx, by] = worldToPointer(view, wx, wy);
      expect(Math.abs(bx - px)).toBeLessThan(0.5);
      expect(Math.abs(by - py)).toBeLessThan(0.5);
    }
  });

  it("panning by pixels shifts the world window against the drag", () => {
    const view = makeView({ zoom: 2 });
    const panned = panBy(view, 100, 0);
    expect(panned.panX).toBe(view.panX - 50);
    expect(pointerToWorld(panned, 100, 0)[0]).toBe(
      pointerToWorld(view, 0, 0)[0],
    );
  });

  it("zoomAt keeps the world under the cursor fixed", () => {
    const view = makeView({ panX: 500, panY: 900, zoom: 0.25 });
    const before = pointerToWorld(view, 320, 240);
    const zoomed = zoomAt(view, 320, 240, 2);
    const after = pointerToWorld(zoomed, 320, 240);
    expect(after[0]).toBeCloseTo(before[0], 9);
    expect(after[1]).toBeCloseTo(before[1], 9);
    // Inverse law: zooming back restores the transform.
    const restored = zoomAt(zoomed, 320, 240, 0.5);
    expect(restored.zoom).toBeCloseTo(view.zoom, 12);
    expect(restored.panX).toBeCloseTo(view.panX, 9);
  });

  it("fitView contains the whole bbox", () => {
    const view = fitView(
      { primitives: [], bbox: [-1000, -2000, 25000, 18000] },
      800,
      600,
    );
    const [x0] = pointerToWorld(view, 0, 0);
    const [x1, y1] = pointerToWorld(view, 800, 600);
    expect(x0).toBeLessThanOrEqual(-1000);
    expect(x1).toBeGreaterThanOrEqual(25000);
    expect(y1).toBeLessThanOrEqual(-2000);
  });
});
