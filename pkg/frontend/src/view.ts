/** View transform between canvas pixels and world millimeters.
 *
 * World axes: X right, Y up. Canvas axes: x right, y down, so the
 * transform flips Y. `zoom` is pixels per millimeter; `pan` is the
 * world point shown at the canvas origin (top-left).
 */

import type { DisplayDoc, Primitive } from "./types.js";

export interface ViewState {
  panX: number; // world mm at canvas x=0
  panY: number; // world mm at canvas y=0 (top edge)
  zoom: number; // px per mm, > 0
  tool: string;
  ghost: { primitives: Primitive[]; badge: string } | null;
}

export function makeView(partial: Partial<ViewState> = {}): ViewState {
  const view: ViewState = {
    panX: 0,
    panY: 0,
    zoom: 0.1,
    tool: "select",
    ghost: null,
    ...partial,
  };
  if (!(view.zoom > 0)) {
    throw new Error(`zoom must be positive, got ${view.zoom}`);
  }
  return view;
}

export function pointerToWorld(
  view: ViewState,
  px: number,
  py: number,
): [number, number] {
  return [view.panX + px / view.zoom, view.panY - py / view.zoom];
}

export function worldToPointer(
  view: ViewState,
  wx: number,
  wy: number,
): [number, number] {
  return [(wx - view.panX) * view.zoom, (view.panY - wy) * view.zoom];
}

/** Zoom about a fixed canvas point so the world under the cursor stays put. */
export function zoomAt(
  view: ViewState,
  px: number,
  py: number,
  factor: number,
): ViewState {
  const [wx, wy] = pointerToWorld(view, px, py);
  const zoom = view.zoom * factor;
  if (!(zoom > 0)) {
    throw new Error(`zoom must stay positive, got ${zoom}`);
  }
  return { ...view, zoom, panX: wx - px / zoom, panY: wy + py / zoom };
}

export function panBy(view: ViewState, dpx: number, dpy: number): ViewState {
  return {
    ...view,
    panX: view.panX - dpx / view.zoom,
    panY: view.panY + dpy / view.zoom,
  };
}

/** Fit a display document into a canvas with a pixel margin. */
export function fitView(
  doc: DisplayDoc,
  width: number,
  height: number,
  marginPx = 20,
): ViewState {
  const [x0, y0, x1, y1] = doc.bbox;
  const spanX = Math.max(x1 - x0, 1);
  const spanY = Math.max(y1 - y0, 1);
  const zoom = Math.min(
    (width - 2 * marginPx) / spanX,
    (height - 2 * marginPx) / spanY,
  );
  return makeView({
    zoom,
    panX: x0 - marginPx / zoom,
    panY: y1 + marginPx / zoom,
  });
}
